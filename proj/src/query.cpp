#include "huto/query.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "huto/annotations.hpp"
#include "huto/error.hpp"
#include "huto/lowering.hpp"
#include "huto/vocab.hpp"

namespace huto {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

TemporalityDescription describe(const Store& store, const Term& root) {
    TemporalityDescription d{root, {}};
    std::set<Term> seen{root};
    std::deque<Term> queue{root};
    while (!queue.empty()) {
        const Term x = queue.front();
        queue.pop_front();
        for (const Triple& t : store.outgoing(x)) {
            d.closure.push_back(t);
            if (t.object.is_blank() && seen.insert(t.object).second) queue.push_back(t.object);
        }
    }
    std::sort(d.closure.begin(), d.closure.end());
    return d;
}

bool is_interval_node(const Store& store, const Term& node) {
    const auto& v = vocab();
    return has_type(store, node, v.during) || has_type(store, node, v.cycle);
}

/// Annotation targets reachable from a root through `exp` arcs.
std::vector<AnnotationTarget> targets_of(const Store& store, const Term& root) {
    std::set<AnnotationTarget> out;
    std::set<Term> seen{root};
    std::deque<Term> queue{root};
    while (!queue.empty()) {
        const Term x = queue.front();
        queue.pop_front();
        for (const Term& carrier : store.objects(x, vocab().exp)) {
            if (!seen.insert(carrier).second) continue;
            if (is_interval_node(store, carrier)) {
                queue.push_back(carrier);
            } else if (auto t = lift_target(store, carrier)) {
                out.insert(*t);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Term> temporal_roots(const Store& store) {
    const auto& v = vocab();
    std::set<Term> out;
    for (const Term* cls : {&v.during, &v.cycle}) {
        for (const Term& x : store.subjects(v.rdf_type, *cls)) {
            if (is_temporal_root(store, x)) out.insert(x);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<RecurringMatch> recurring_where(const Store& store, const std::function<bool(const Term&)>& accept) {
    const auto& v = vocab();
    std::vector<RecurringMatch> out;
    std::set<std::pair<AnnotationTarget, Term>> seen;
    for (const Term& cycle : store.subjects(v.rdf_type, v.cycle)) {
        if (store.object(cycle, v.sample) || !accept(cycle)) continue;
        for (const Term& root : roots_above(store, cycle)) {
            const auto description = describe(store, root);
            for (const auto& target : targets_of(store, root)) {
                if (seen.emplace(target, root).second) out.push_back(RecurringMatch{target, description});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RecurringMatch& a, const RecurringMatch& b) {
        return std::tie(a.target, a.temporality.root) < std::tie(b.target, b.temporality.root);
    });
    return out;
}

// ---- day coverage ------------------------------------------------------------

enum class Verdict { No, Yes, Indeterminate };

bool pattern_matches(const PartialDate& p, std::int64_t day) {
    const CivilDate c = from_day_number(day);
    if (p.century && century_of(c.year) != *p.century) return false;
    if (p.year && c.year != *p.year) return false;
    if (p.month && c.month != *p.month) return false;
    if (p.day_of_month && c.day != *p.day_of_month) return false;
    if (p.week_of_month && week_of_month(c.day) != *p.week_of_month) return false;
    if (p.day_kind) {
        if (const auto* w = std::get_if<Weekday>(&*p.day_kind)) {
            if (weekday_of_day_number(day) != *w) return false;
        }
    }
    return true;
}

struct CompiledCycle;

struct CompiledInterval {
    bool resolvable = true;
    std::vector<PartialDate> patterns;
    std::optional<std::int64_t> lo;
    std::optional<std::int64_t> hi;
    /// Seconds since the epoch of the first instant, for sub-day sampling.
    std::optional<std::int64_t> anchor_seconds;
    std::shared_ptr<CompiledCycle> cycle;
    bool via_period = false;

    bool dated() const { return !patterns.empty() || lo || hi || cycle; }
};

struct CompiledCycle {
    Granularity every = Granularity::Year;
    /// Set when the frequency names a weekday (`every [a :Wednesday]`).
    std::optional<Weekday> every_weekday;
    std::optional<CompiledInterval> occurrence;
    std::optional<std::int64_t> sample;
};

Verdict interval_covers(const CompiledInterval& i, std::int64_t day);

Verdict cycle_covers(const CompiledCycle& c, std::int64_t day, const CompiledInterval& enclosing) {
    if (c.every_weekday && weekday_of_day_number(day) != *c.every_weekday) return Verdict::No;
    if (c.occurrence && interval_covers(*c.occurrence, day) != Verdict::Yes) return Verdict::No;
    if (!c.sample) return Verdict::Yes;
    if (!enclosing.lo || !enclosing.anchor_seconds) return Verdict::Indeterminate;
    const std::int64_t n = *c.sample;
    const std::int64_t anchor = *enclosing.lo;
    if (day < anchor) return Verdict::No;
    const CivilDate a = from_day_number(anchor);
    const CivilDate d = from_day_number(day);
    std::int64_t step_seconds = 0;
    switch (c.every) {
        case Granularity::Century:
            return floor_mod(century_of(d.year) - century_of(a.year), n) == 0 ? Verdict::Yes : Verdict::No;
        case Granularity::Year:
            return floor_mod(d.year - a.year, n) == 0 ? Verdict::Yes : Verdict::No;
        case Granularity::Month:
            return floor_mod((d.year * 12 + d.month) - (a.year * 12 + a.month), n) == 0 ? Verdict::Yes : Verdict::No;
        case Granularity::Week:
            return floor_mod(day - anchor, 7 * n) == 0 ? Verdict::Yes : Verdict::No;
        case Granularity::Day:
            return floor_mod(day - anchor, n) == 0 ? Verdict::Yes : Verdict::No;
        case Granularity::Hour:
            step_seconds = 3600 * n;
            break;
        case Granularity::Minute:
            step_seconds = 60 * n;
            break;
        case Granularity::Second:
            step_seconds = n;
            break;
    }
    // Some occurrence anchor + k*step (k >= 0) falls inside the day.
    const std::int64_t start = *enclosing.anchor_seconds;
    const std::int64_t day_first = day * 86400;
    const std::int64_t day_last = day_first + 86399;
    if (day_last < start) return Verdict::No;
    const std::int64_t k = day_first <= start ? 0 : floor_div(day_first - start + step_seconds - 1, step_seconds);
    return start + k * step_seconds <= day_last ? Verdict::Yes : Verdict::No;
}

Verdict interval_covers(const CompiledInterval& i, std::int64_t day) {
    if (!i.resolvable || !i.dated()) return Verdict::No;
    if (!i.patterns.empty() &&
        std::none_of(i.patterns.begin(), i.patterns.end(), [&](const PartialDate& p) { return pattern_matches(p, day); })) {
        return Verdict::No;
    }
    if (i.lo && day < *i.lo) return Verdict::No;
    if (i.hi && day > *i.hi) return Verdict::No;
    if (i.cycle) return cycle_covers(*i.cycle, day, i);
    return Verdict::Yes;
}

std::optional<std::int64_t> seconds_at(const PartialDate& d, std::int64_t day) {
    return day * 86400 + d.hour.value_or(0) * 3600 + d.minute.value_or(0) * 60 + d.second.value_or(0);
}

class Compiler {
public:
    Compiler(const Store& store, const QueryOptions& options) : store_(store), options_(options) {
        lift_.generic_days = options.generic_days;
    }

    CompiledInterval interval(const Term& node, int depth = 0) {
        const auto& v = vocab();
        CompiledInterval out;
        if (depth > lift_.max_depth) {
            out.resolvable = false;
            return out;
        }
        for (const Term& d : store_.objects(node, v.has_date)) {
            if (has_type(store_, d, v.period)) {
                out.via_period = true;
                continue;
            }
            if (auto date = resolved(d)) {
                out.patterns.push_back(*date);
            } else {
                out.resolvable = false;
            }
        }
        auto bound = [&](const Term& p, bool first) -> std::optional<std::int64_t> {
            std::optional<std::int64_t> result;
            for (const Term& d : store_.objects(node, p)) {
                if (has_type(store_, d, v.period)) {
                    out.via_period = true;
                    continue;
                }
                const auto date = resolved(d);
                const auto bounds = date ? day_bounds(*date) : std::nullopt;
                if (!bounds) {
                    out.resolvable = false;
                    continue;
                }
                const std::int64_t value = first ? bounds->first : bounds->second;
                // Several derived bounds tighten the interval.
                if (!result) {
                    result = value;
                } else {
                    result = first ? std::max(*result, value) : std::min(*result, value);
                }
                if (first) out.anchor_seconds = seconds_at(*date, value);
            }
            return result;
        };
        out.lo = bound(v.has_begin, true);
        out.hi = bound(v.has_end, false);
        if (out.lo && !out.hi) {
            // Normalization adds the end; this covers stores queried without it.
            for (const Term& dn : store_.objects(node, v.has_duration)) {
                const auto dur = lift_duration(store_, dn);
                const auto begin = first_resolved(node, v.has_begin);
                if (!dur || !begin) continue;
                try {
                    const auto end = add_duration(*begin, *dur);
                    if (const auto b = day_bounds(end)) out.hi = b->second;
                } catch (const Error&) {
                    out.resolvable = false;
                }
            }
        }
        if (!out.lo && !out.patterns.empty()) {
            // A dated interval with an inner cycle anchors its sampling at the date's first day.
            if (const auto b = day_bounds(out.patterns.front())) {
                out.anchor_seconds = seconds_at(out.patterns.front(), b->first);
                if (out.patterns.size() == 1) out.lo = b->first;
            }
        }
        for (const Term& c : store_.objects(node, v.exp)) {
            if (!has_type(store_, c, v.cycle)) continue;
            out.cycle = std::make_shared<CompiledCycle>(cycle(c, depth + 1));
            break;
        }
        return out;
    }

    CompiledCycle cycle(const Term& node, int depth = 0) {
        const auto& v = vocab();
        CompiledCycle out;
        for (const Term& e : store_.objects(node, v.every)) {
            for (const Term& t : store_.objects(e, v.rdf_type)) {
                if (auto w = v.weekday_of_class(t)) out.every_weekday = *w;
            }
            if (auto g = granularity_of_node(store_, e, lift_)) {
                out.every = *g;
                break;
            }
        }
        for (const Term& o : store_.objects(node, v.exp)) {
            if (!has_type(store_, o, v.during)) continue;
            out.occurrence = interval(o, depth + 1);
            break;
        }
        for (const Term& s : store_.objects(node, v.sample)) {
            if (s.is_integer() && s.integer_value() > 0) out.sample = s.integer_value();
        }
        return out;
    }

private:
    std::optional<PartialDate> resolved(const Term& node) {
        auto date = lift_date(store_, node, lift_);
        if (!date) return std::nullopt;
        if (is_generic(date->day_kind)) {
            const std::optional<PartialDate> reference =
                date->context ? std::optional<PartialDate>(*date->context) : options_.today;
            if (!reference) return std::nullopt;
            try {
                return resolve_deictic(*date, *reference);
            } catch (const Error&) {
                return std::nullopt;
            }
        }
        return date;
    }

    std::optional<PartialDate> first_resolved(const Term& node, const Term& p) {
        for (const Term& d : store_.objects(node, p)) {
            if (has_type(store_, d, vocab().period)) continue;
            if (auto date = resolved(d)) return date;
        }
        return std::nullopt;
    }

    const Store& store_;
    const QueryOptions& options_;
    LiftOptions lift_;
};

struct RootCoverage {
    Term root;
    bool is_cycle = false;
    CompiledInterval interval;  // a root Cycle is wrapped in an undated interval
    std::vector<AnnotationTarget> targets;

    Verdict covers(std::int64_t day) const {
        if (is_cycle) return cycle_covers(*interval.cycle, day, interval);
        return interval_covers(interval, day);
    }

    MatchKind kind(Verdict verdict) const {
        if (verdict == Verdict::Indeterminate) return MatchKind::Indeterminate;
        if (is_cycle || interval.cycle) return MatchKind::Cycle;
        if (interval.via_period) return MatchKind::Period;
        return MatchKind::Interval;
    }
};

}  // namespace

DateQuery DateQuery::of(std::int64_t year, int month, int day) {
    return DateQuery{year, month, day, weekday_of(year, month, day)};
}

std::string_view to_string(MatchKind kind) {
    switch (kind) {
        case MatchKind::Interval: return "interval";
        case MatchKind::Cycle: return "cycle";
        case MatchKind::Period: return "period";
        case MatchKind::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

std::optional<std::pair<std::int64_t, std::int64_t>> day_bounds(const PartialDate& date) {
    std::int64_t first = 0;
    std::int64_t last = 0;
    if (date.year) {
        if (*date.year < 1) return std::nullopt;
        if (date.month) {
            if (*date.month < 1 || *date.month > 12) return std::nullopt;
            first = to_day_number({*date.year, *date.month, 1});
            last = to_day_number({*date.year, *date.month, days_in_month(*date.year, *date.month)});
        } else {
            first = to_day_number({*date.year, 1, 1});
            last = to_day_number({*date.year, 12, 31});
        }
    } else if (date.century && !date.month && !date.day_of_month) {
        if (*date.century < 1) return std::nullopt;
        first = to_day_number({(*date.century - 1) * 100 + 1, 1, 1});
        last = to_day_number({*date.century * 100, 12, 31});
    } else {
        return std::nullopt;
    }
    // Narrow to the first and last day the remaining granules allow.
    while (first <= last && !pattern_matches(date, first)) ++first;
    while (last >= first && !pattern_matches(date, last)) --last;
    if (first > last) return std::nullopt;
    return std::make_pair(first, last);
}

std::vector<TemporalityDescription> temporality_of(const Store& store, const Term& resource) {
    const auto& v = vocab();
    std::set<Term> carriers;
    for (const Term* p : {&v.rdf_value, &v.rdf_subject, &v.rdf_object}) {
        for (const Term& c : store.subjects(*p, resource)) {
            if (!has_type(store, c, v.period)) carriers.insert(c);
        }
    }
    for (const auto& [carrier, graph] : store.pairs(v.uri)) {
        if (graph.is_iri() && graph_mentions(store, graph, resource)) carriers.insert(carrier);
    }
    std::set<Term> roots;
    for (const Term& c : carriers) {
        for (const Term& r : roots_above(store, c)) roots.insert(r);
    }
    std::vector<TemporalityDescription> out;
    for (const Term& r : roots) out.push_back(describe(store, r));
    return out;
}

std::vector<RecurringMatch> recurring_resources(const Store& store, Granularity freq) {
    return recurring_where(store, [&](const Term& cycle) {
        for (const Term& e : store.objects(cycle, vocab().every)) {
            if (granularity_of_node(store, e) == freq) return true;
        }
        return false;
    });
}

std::vector<RecurringMatch> recurring_resources(const Store& store, Weekday day) {
    const auto& v = vocab();
    return recurring_where(store, [&](const Term& cycle) {
        for (const Term& e : store.objects(cycle, v.every)) {
            if (has_type(store, e, v.weekday_class(day))) return true;
        }
        for (const Term& o : store.objects(cycle, v.exp)) {
            if (!has_type(store, o, v.during)) continue;
            for (const Term& dn : store.objects(o, v.has_date)) {
                const auto d = lift_date(store, dn);
                if (d && d->day_kind && *d->day_kind == DayKind{day}) return true;
            }
        }
        return false;
    });
}

std::vector<Term> relative_resources(const Store& store, const Term& resource, AllenKind relation) {
    const auto& v = vocab();
    const Term& p = relation == AllenKind::Before ? v.before : v.after;
    bool convex = !store.subjects(v.before, resource).empty() || !store.subjects(v.after, resource).empty() ||
                  !store.objects(resource, v.before).empty() || !store.objects(resource, v.after).empty();
    for (const Term& x : direct_annotators(store, resource)) convex = convex || has_type(store, x, v.during);
    for (const Term& holder : store.subjects(v.rdf_value, resource)) convex = convex || has_type(store, holder, v.period);
    if (!convex) {
        throw Error(ErrorCode::NotConvexlyDated, to_string(resource) + " has no convex temporality");
    }
    std::set<Term> out;
    for (const Term& x : store.subjects(p, resource)) {
        if (x != resource && x.is_iri() && !is_temporal_node(store, x)) out.insert(x);
    }
    return {out.begin(), out.end()};
}

struct TemporalIndex::Impl {
    std::vector<RootCoverage> roots;
};

TemporalIndex::TemporalIndex(const Store& store, const QueryOptions& options) : impl_(std::make_unique<Impl>()) {
    Compiler compiler(store, options);
    for (const Term& root : temporal_roots(store)) {
        RootCoverage rc;
        rc.root = root;
        rc.targets = targets_of(store, root);
        if (rc.targets.empty()) continue;
        if (has_type(store, root, vocab().cycle)) {
            rc.is_cycle = true;
            rc.interval.cycle = std::make_shared<CompiledCycle>(compiler.cycle(root));
        } else {
            rc.interval = compiler.interval(root);
        }
        impl_->roots.push_back(std::move(rc));
    }
}

TemporalIndex::~TemporalIndex() = default;
TemporalIndex::TemporalIndex(TemporalIndex&&) noexcept = default;
TemporalIndex& TemporalIndex::operator=(TemporalIndex&&) noexcept = default;

std::vector<DateMatch> TemporalIndex::on(const DateQuery& q) const {
    const CivilDate c{q.year, q.month, q.day};
    if (q.year < 1 || !is_valid_civil(c)) throw Error(ErrorCode::InvalidDate, "not a civil date");
    if (weekday_of(c) != q.weekday) {
        throw Error(ErrorCode::InvalidDate, "the date falls on " + std::string(weekday_name(weekday_of(c))) +
                                                ", not " + std::string(weekday_name(q.weekday)));
    }
    const std::int64_t day = to_day_number(c);
    std::set<DateMatch> out;
    for (const auto& rc : impl_->roots) {
        const Verdict verdict = rc.covers(day);
        if (verdict == Verdict::No) continue;
        for (const auto& t : rc.targets) out.insert(DateMatch{t, rc.kind(verdict), rc.root});
    }
    return {out.begin(), out.end()};
}

std::vector<AnnotationTarget> TemporalIndex::overlapping(std::int64_t first, std::int64_t last) const {
    std::set<AnnotationTarget> out;
    for (const auto& rc : impl_->roots) {
        bool hit = false;
        std::int64_t from = first;
        std::int64_t to = last;
        if (!rc.is_cycle) {
            if (rc.interval.lo) from = std::max(from, *rc.interval.lo);
            if (rc.interval.hi) to = std::min(to, *rc.interval.hi);
        }
        for (std::int64_t d = from; d <= to && !hit; ++d) hit = rc.covers(d) == Verdict::Yes;
        if (hit) out.insert(rc.targets.begin(), rc.targets.end());
    }
    return {out.begin(), out.end()};
}

std::vector<DateMatch> resources_on(const Store& store, const DateQuery& query, const QueryOptions& options) {
    return TemporalIndex(store, options).on(query);
}

std::vector<AnnotationTarget> resources_in_range(const Store& store, const PartialDate& begin, const PartialDate& end,
                                                 std::int64_t horizon_days, const QueryOptions& options) {
    const auto b = day_bounds(begin);
    const auto e = day_bounds(end);
    if (!b || !e) throw Error(ErrorCode::Underspecified, "range bounds need at least a year");
    const std::int64_t first = b->first;
    const std::int64_t last = e->second;
    if (first > last) throw Error(ErrorCode::InvalidDate, "range begin follows its end");
    if (last - first + 1 > horizon_days) {
        throw Error(ErrorCode::RangeTooLarge, "range spans " + std::to_string(last - first + 1) +
                                                  " days, above the horizon of " + std::to_string(horizon_days));
    }
    return TemporalIndex(store, options).overlapping(first, last);
}

}  // namespace huto
