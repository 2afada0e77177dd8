#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "huto/error.hpp"
#include "huto/lowering.hpp"
#include "huto/textio.hpp"
#include "huto/vocab.hpp"

namespace huto::testing {

std::string fixture_path(const std::string& name) { return std::string(HUTO_FIXTURE_DIR) + "/" + name; }

std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> all_fixtures() {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(HUTO_FIXTURE_DIR)) {
        if (entry.is_regular_file()) out.push_back(entry.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t load_fixture(Store& store, const std::string& name) { return load_into(store, parse(read_fixture(name))); }

Term node_iri(int i) { return Term::iri(std::string(kDataNs) + "n" + std::to_string(i)); }

std::vector<std::pair<int, int>> random_dag(std::mt19937& rng, int n, double density) {
    std::bernoulli_distribution edge(density);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (edge(rng)) out.emplace_back(i, j);
        }
    }
    return out;
}

namespace {

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

PartialDate random_date(std::mt19937& rng) {
    PartialDate d;
    d.year = pick(rng, 1890, 2030);
    if (pick(rng, 0, 3) > 0) d.month = pick(rng, 1, 12);
    if (d.month && pick(rng, 0, 2) == 0) {
        d.day_of_month = pick(rng, 1, days_in_month(*d.year, *d.month));
        d.day_kind = PlainDay{};
    }
    return d;
}

Duration random_duration(std::mt19937& rng) {
    static constexpr Granularity kUnits[] = {Granularity::Year, Granularity::Month, Granularity::Day};
    return Duration::of({{kUnits[pick(rng, 0, 2)], pick(rng, 1, 30)}});
}

AnnotationTarget random_target(std::mt19937& rng, int resources) {
    switch (pick(rng, 0, 4)) {
        case 0:
            return ReifiedTarget{node_iri(pick(rng, 0, resources - 1)), Term::iri(std::string(kDataNs) + "rel"),
                                 node_iri(pick(rng, 0, resources - 1))};
        case 1:
            return GraphTarget{Term::iri("http://example.org/g/" + std::to_string(pick(rng, 0, 3)))};
        default:
            return ResourceTarget{node_iri(pick(rng, 0, resources - 1))};
    }
}

Interval random_interval(std::mt19937& rng, int resources) {
    Interval i;
    switch (pick(rng, 0, 4)) {
        case 0:
            i.date = random_date(rng);
            break;
        case 1: {
            i.begin = random_date(rng);
            PartialDate end = *i.begin;
            end.year = *end.year + pick(rng, 0, 20);
            i.end = end;
            break;
        }
        case 2:
            i.begin = random_date(rng);
            i.duration = random_duration(rng);
            break;
        case 3:
            i.relations.push_back(AllenRelation{pick(rng, 0, 1) ? AllenKind::Before : AllenKind::After,
                                                PeriodMarker{node_iri(pick(rng, 0, resources - 1))}});
            break;
        default:
            i.date = random_date(rng);
            i.inner_cycle = Cycle{Granularity::Month, {}, pick(rng, 1, 4)};
            break;
    }
    return i;
}

}  // namespace

Store random_store(std::mt19937& rng, std::size_t max_triples) {
    Store store;
    const int resources = pick(rng, 4, 30);
    const auto& v = vocab();
    constexpr std::size_t kLargestAnnotation = 40;
    while (store.size() + kLargestAnnotation < max_triples) {
        switch (pick(rng, 0, 5)) {
            case 0:
            case 1: {
                TemporalAnnotation a{random_interval(rng, resources), {random_target(rng, resources)}};
                lower(store, a);
                break;
            }
            case 2: {
                Interval occurrence;
                PartialDate d;
                d.month = pick(rng, 1, 12);
                d.day_of_month = pick(rng, 1, 28);
                d.day_kind = PlainDay{};
                occurrence.date = d;
                TemporalAnnotation a{Cycle{Granularity::Year, occurrence, std::nullopt},
                                     {random_target(rng, resources)}};
                lower(store, a);
                break;
            }
            case 3: {
                AllenLink link{pick(rng, 0, 1) ? AllenKind::Before : AllenKind::After,
                               node_iri(pick(rng, 0, resources - 1)), node_iri(pick(rng, 0, resources - 1))};
                lower(store, link);
                break;
            }
            case 4: {
                const Term g = Term::iri("http://example.org/g/" + std::to_string(pick(rng, 0, 3)));
                store.insert(Triple{node_iri(pick(rng, 0, resources - 1)), Term::iri(std::string(kDataNs) + "rel"),
                                    node_iri(pick(rng, 0, resources - 1)), g});
                break;
            }
            default:
                store.insert(node_iri(pick(rng, 0, resources - 1)), v.rdf_type,
                             v.granule(kAllGranularities[static_cast<std::size_t>(pick(rng, 0, 7))]).unit_class);
                break;
        }
    }
    return store;
}

std::vector<Term> unreferenced_roots(const Store& store) {
    const auto& v = vocab();
    std::vector<Term> out;
    for (const Term& cls : {v.during, v.cycle}) {
        for (const Term& n : store.subjects(v.rdf_type, cls)) {
            if (store.incoming(n, GraphScope::All).empty()) out.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace oracle {

using namespace std::chrono;

namespace {

struct Span {
    Day first;
    Day last;
};

Weekday to_weekday(Day d) {
    const unsigned iso = weekday(d).iso_encoding();
    return static_cast<Weekday>(iso);
}

bool matches(const PartialDate& p, Day day) {
    const year_month_day ymd(day);
    const std::int64_t y = static_cast<int>(ymd.year());
    const int m = static_cast<int>(static_cast<unsigned>(ymd.month()));
    const int d = static_cast<int>(static_cast<unsigned>(ymd.day()));
    if (p.century && (y - 1) / 100 + 1 != *p.century) return false;
    if (p.year && y != *p.year) return false;
    if (p.month && m != *p.month) return false;
    if (p.day_of_month && d != *p.day_of_month) return false;
    if (p.week_of_month && (d - 1) / 7 + 1 != *p.week_of_month) return false;
    if (p.day_kind) {
        if (const auto* w = std::get_if<Weekday>(&*p.day_kind)) {
            if (to_weekday(day) != *w) return false;
        }
    }
    return true;
}

/// First and last matching day inside the year or century the date names.
std::optional<Span> span_of(const PartialDate& p) {
    Day from;
    Day to;
    if (p.year) {
        const auto y = year(static_cast<int>(*p.year));
        if (p.month) {
            from = sys_days(y / month(static_cast<unsigned>(*p.month)) / 1);
            to = sys_days(y / month(static_cast<unsigned>(*p.month)) / last);
        } else {
            from = sys_days(y / January / 1);
            to = sys_days(y / December / 31);
        }
    } else if (p.century) {
        from = sys_days(year(static_cast<int>((*p.century - 1) * 100 + 1)) / January / 1);
        to = sys_days(year(static_cast<int>(*p.century * 100)) / December / 31);
    } else {
        return std::nullopt;
    }
    while (from <= to && !matches(p, from)) from += days(1);
    while (to >= from && !matches(p, to)) to -= days(1);
    if (from > to) return std::nullopt;
    return Span{from, to};
}

seconds time_of(const PartialDate& p) {
    return hours(p.hour.value_or(0)) + minutes(p.minute.value_or(0)) + seconds(p.second.value_or(0));
}

/// Inclusive end of a single-unit span; the begin must be as precise as the unit.
std::optional<PartialDate> end_of(const PartialDate& begin, const Duration& dur) {
    if (dur.granules().size() != 1) return std::nullopt;
    const auto [unit, n] = *dur.granules().begin();
    PartialDate out = begin;
    auto clamp_day = [&out] {
        if (!out.month || !out.day_of_month) return;
        const auto last_day = year_month_day_last(year(static_cast<int>(*out.year)) /
                                                  month_day_last(month(static_cast<unsigned>(*out.month))));
        out.day_of_month = std::min<int>(*out.day_of_month, static_cast<int>(static_cast<unsigned>(last_day.day())));
    };
    switch (unit) {
        case Granularity::Year:
            if (!begin.year) return std::nullopt;
            out.year = *begin.year + n - 1;
            clamp_day();
            return out;
        case Granularity::Month: {
            if (!begin.year || !begin.month) return std::nullopt;
            const auto ym = year(static_cast<int>(*begin.year)) / month(static_cast<unsigned>(*begin.month)) +
                            months(n - 1);
            out.year = static_cast<int>(ym.year());
            out.month = static_cast<int>(static_cast<unsigned>(ym.month()));
            clamp_day();
            return out;
        }
        case Granularity::Day: {
            if (!begin.year || !begin.month || !begin.day_of_month) return std::nullopt;
            const year_month_day end(to_day(*begin.year, *begin.month, *begin.day_of_month) + days(n - 1));
            out.year = static_cast<int>(end.year());
            out.month = static_cast<int>(static_cast<unsigned>(end.month()));
            out.day_of_month = static_cast<int>(static_cast<unsigned>(end.day()));
            out.week_of_month.reset();
            out.day_kind.reset();
            return out;
        }
        default:
            return std::nullopt;
    }
}

bool is_datation_period(const Store& store, const Term& node) {
    const auto& v = vocab();
    for (const Term& p : {v.has_date, v.has_begin, v.has_end}) {
        for (const Term& o : store.objects(node, p)) {
            if (store.contains(o, v.rdf_type, v.period)) return true;
        }
    }
    return false;
}

}  // namespace

Day to_day(std::int64_t y, int m, int d) {
    return sys_days(year(static_cast<int>(y)) / month(static_cast<unsigned>(m)) / day(static_cast<unsigned>(d)));
}

DateQuery query_for(Day d) {
    const year_month_day ymd(d);
    return DateQuery{static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
                     static_cast<int>(static_cast<unsigned>(ymd.day())), to_weekday(d)};
}

Expander::Expander(const Store& store, std::optional<PartialDate> today) : store_(store), today_(std::move(today)) {
    const auto& v = vocab();
    for (const Term& cls : {v.during, v.cycle}) {
        for (const Term& node : store.subjects(v.rdf_type, cls)) {
            if (store.contains(node, v.rdf_type, v.period)) continue;
            bool referenced = false;
            for (const Triple& t : store.incoming(node, GraphScope::All)) {
                if (t.predicate != v.before && t.predicate != v.after) referenced = true;
            }
            if (referenced) continue;
            auto annotation = lift_annotation(store, node);
            if (!annotation || annotation->targets.empty()) continue;
            Root root{node, *annotation, MatchKind::Interval, std::nullopt};
            // The cycle of the annotation: the root itself or the interval's inner cycle.
            std::optional<Term> cycle_node;
            if (std::holds_alternative<Cycle>(annotation->when)) {
                cycle_node = node;
            } else {
                for (const Term& c : store.objects(node, v.exp)) {
                    if (store.contains(c, v.rdf_type, v.cycle)) cycle_node = c;
                }
            }
            if (cycle_node) {
                root.kind = MatchKind::Cycle;
                for (const Term& e : store.objects(*cycle_node, v.every)) {
                    for (const Term& t : store.objects(e, v.rdf_type)) {
                        if (auto w = v.weekday_of_class(t)) root.every_weekday = *w;
                    }
                }
            } else if (is_datation_period(store, node)) {
                root.kind = MatchKind::Period;
            }
            roots_.push_back(std::move(root));
        }
    }
}

std::optional<PartialDate> Expander::resolve(const PartialDate& d) const {
    if (!is_generic(d.day_kind)) return d;
    const auto& generic = std::get<GenericDay>(*d.day_kind);
    const PartialDate* reference = d.context ? &*d.context : (today_ ? &*today_ : nullptr);
    if (!reference || !reference->year || !reference->month || !reference->day_of_month) return std::nullopt;
    const Day shifted = to_day(*reference->year, *reference->month, *reference->day_of_month) + days(generic.offset_days);
    const year_month_day ymd(shifted);
    PartialDate out = d;
    out.context = {};
    out.year = static_cast<int>(ymd.year());
    out.month = static_cast<int>(static_cast<unsigned>(ymd.month()));
    out.day_of_month = static_cast<int>(static_cast<unsigned>(ymd.day()));
    out.day_kind = PlainDay{};
    return out;
}

Cover Expander::covers(const Interval& i, Day day, const Root& root) const {
    bool dated = false;
    if (i.date) {
        const auto d = resolve(*i.date);
        if (!d || !matches(*d, day)) return Cover::No;
        dated = true;
    }
    if (i.begin) {
        const auto d = resolve(*i.begin);
        const auto s = d ? span_of(*d) : std::nullopt;
        if (!s || day < s->first) return Cover::No;
        if (!i.end && i.duration) {
            const auto e = end_of(*d, *i.duration);
            const auto last = e ? span_of(*e) : std::nullopt;
            if (!last || day > last->last) return Cover::No;
        }
        dated = true;
    }
    if (i.end) {
        const auto d = resolve(*i.end);
        const auto s = d ? span_of(*d) : std::nullopt;
        if (!s || day > s->last) return Cover::No;
        dated = true;
    }
    if (i.inner_cycle) return covers(*i.inner_cycle, day, &i, root);
    return dated ? Cover::Yes : Cover::No;
}

Cover Expander::covers(const Cycle& c, Day day, const Interval* enclosing, const Root& root) const {
    if (root.every_weekday && to_weekday(day) != *root.every_weekday) return Cover::No;
    if (c.occurrence && covers(*c.occurrence, day, Root{root.node, root.annotation, root.kind, std::nullopt}) !=
                            Cover::Yes) {
        return Cover::No;
    }
    if (!c.sample) return Cover::Yes;
    // Sampling starts at the enclosing interval's begin, or at its date when it names a year.
    std::optional<PartialDate> start;
    if (enclosing && enclosing->begin) {
        start = resolve(*enclosing->begin);
    } else if (enclosing && enclosing->date) {
        start = resolve(*enclosing->date);
    }
    const auto s = start ? span_of(*start) : std::nullopt;
    if (!s) return Cover::Unknown;
    if (day < s->first) return Cover::No;
    const std::int64_t n = *c.sample;
    const year_month_day a(s->first);
    const year_month_day d(day);
    switch (c.every) {
        case Granularity::Century: {
            const auto century = [](const year_month_day& x) { return (static_cast<int>(x.year()) - 1) / 100 + 1; };
            for (auto k = century(a); k <= century(d); k += static_cast<int>(n)) {
                if (k == century(d)) return Cover::Yes;
            }
            return Cover::No;
        }
        case Granularity::Year:
            for (auto y = a.year(); y <= d.year(); y += years(n)) {
                if (y == d.year()) return Cover::Yes;
            }
            return Cover::No;
        case Granularity::Month:
            for (auto ym = a.year() / a.month(); ym <= d.year() / d.month(); ym += months(n)) {
                if (ym == d.year() / d.month()) return Cover::Yes;
            }
            return Cover::No;
        case Granularity::Week:
        case Granularity::Day: {
            const days step = c.every == Granularity::Week ? days(7 * n) : days(n);
            for (Day x = s->first; x <= day; x += step) {
                if (x == day) return Cover::Yes;
            }
            return Cover::No;
        }
        default: {
            const seconds step = c.every == Granularity::Hour     ? seconds(hours(n))
                                 : c.every == Granularity::Minute ? seconds(minutes(n))
                                                                  : seconds(n);
            const sys_seconds day_start(day);
            const sys_seconds day_end = day_start + days(1);
            for (sys_seconds t = sys_seconds(s->first) + time_of(*start); t < day_end; t += step) {
                if (t >= day_start) return Cover::Yes;
            }
            return Cover::No;
        }
    }
}

std::pair<std::set<Match>, std::set<std::pair<AnnotationTarget, Term>>> Expander::on(Day day) const {
    std::set<Match> yes;
    std::set<std::pair<AnnotationTarget, Term>> unknown;
    for (const Root& root : roots_) {
        const Cover c = std::visit(
            [&](const auto& when) {
                using T = std::decay_t<decltype(when)>;
                if constexpr (std::is_same_v<T, Cycle>) {
                    return covers(when, day, nullptr, root);
                } else {
                    return covers(when, day, root);
                }
            },
            root.annotation.when);
        for (const auto& target : root.annotation.targets) {
            if (c == Cover::Yes) yes.insert(Match{target, root.kind, root.node});
            if (c == Cover::Unknown) unknown.emplace(target, root.node);
        }
    }
    return {yes, unknown};
}

}  // namespace oracle

}  // namespace huto::testing
