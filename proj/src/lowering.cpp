#include "huto/lowering.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "huto/vocab.hpp"

namespace huto {

namespace {

Term granule_node(Store& store, Granularity g, std::optional<std::int64_t> number) {
    const auto& v = vocab();
    const auto& terms = v.granule(g);
    const Term node = store.fresh_blank();
    store.insert(node, v.rdf_type, terms.unit_class);
    if (number) store.insert(node, terms.value_property, Term::integer(*number));
    return node;
}

Term lower_operand(Store& store, const AllenOperand& operand) {
    return std::visit(
        [&](const auto& x) -> Term {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Term>) {
                return x;
            } else if constexpr (std::is_same_v<T, PeriodMarker>) {
                return lower(store, x);
            } else {
                return lower(store, *x);
            }
        },
        operand);
}

std::optional<std::int64_t> integer_of(const Store& store, const Term& node, const Term& prop) {
    for (const Term& t : store.objects(node, prop)) {
        if (t.is_integer()) return t.integer_value();
    }
    return std::nullopt;
}

/// `value` arcs entailed from a specific property (`week`) never stand for another unit.
std::optional<std::int64_t> generic_value(const Store& store, const Term& node) {
    const auto& v = vocab();
    for (Granularity g : kAllGranularities) {
        if (integer_of(store, node, v.granule(g).value_property)) return std::nullopt;
    }
    return integer_of(store, node, v.value);
}

/// Value on a granule node: the specific property (`year`) first, then the generic `value`.
std::optional<std::int64_t> granule_value(const Store& store, const Term& node, Granularity g) {
    if (auto n = integer_of(store, node, vocab().granule(g).value_property)) return n;
    return generic_value(store, node);
}

std::vector<Term> types_of(const Store& store, const Term& node) {
    return store.objects(node, vocab().rdf_type);
}

std::optional<DayKind> day_kind_of(const Store& store, const Term& node, const LiftOptions& options) {
    const auto& v = vocab();
    const auto types = types_of(store, node);
    for (const Term& t : types) {
        if (auto w = v.weekday_of_class(t)) return DayKind{*w};
    }
    for (const Term& t : types) {
        const auto local = huto_local(t);
        if (local.empty()) continue;
        if (auto g = options.generic_days->find(local)) return DayKind{*g};
    }
    for (const Term& t : types) {
        if (t == v.granule(Granularity::Day).unit_class) return DayKind{PlainDay{}};
    }
    return std::nullopt;
}

/// First object of `p` that is not a Period marker.
std::vector<Term> datation_nodes(const Store& store, const Term& node, const Term& p) {
    std::vector<Term> out;
    for (const Term& t : store.objects(node, p)) {
        if (!has_type(store, t, vocab().period)) out.push_back(t);
    }
    return out;
}

std::optional<PartialDate> lift_date_at(const Store& store, const Term& node, const LiftOptions& options,
                                        int depth) {
    if (depth > options.max_depth) return std::nullopt;
    const auto& v = vocab();
    PartialDate d;
    auto first = [&](Granularity g) -> std::optional<Term> {
        auto nodes = datation_nodes(store, node, v.granule(g).has_property);
        if (nodes.empty()) return std::nullopt;
        return nodes.front();
    };

    if (auto n = first(Granularity::Century)) d.century = granule_value(store, *n, Granularity::Century);
    if (auto n = first(Granularity::Year)) d.year = granule_value(store, *n, Granularity::Year);
    if (auto n = first(Granularity::Month)) {
        if (auto m = granule_value(store, *n, Granularity::Month)) {
            d.month = static_cast<int>(*m);
        } else {
            for (const Term& t : types_of(store, *n)) {
                if (auto m2 = v.month_of_class(t)) {
                    d.month = *m2;
                    break;
                }
            }
        }
    }
    if (auto n = first(Granularity::Day)) {
        d.day_kind = day_kind_of(store, *n, options);
        if (auto day = integer_of(store, *n, v.granule(Granularity::Day).value_property)) {
            d.day_of_month = static_cast<int>(*day);
        } else if (auto value = generic_value(store, *n)) {
            d.day_of_month = static_cast<int>(*value);
        }
        if (auto week = integer_of(store, *n, v.week)) d.week_of_month = static_cast<int>(*week);
        if (auto ctx = store.object(*n, v.has_context)) {
            if (auto c = lift_date_at(store, *ctx, options, depth + 1)) d.context = *c;
        }
    }
    if (!d.week_of_month) {
        if (auto n = first(Granularity::Week)) {
            if (auto w = granule_value(store, *n, Granularity::Week)) d.week_of_month = static_cast<int>(*w);
        }
    }
    if (auto n = first(Granularity::Hour)) {
        if (auto h = granule_value(store, *n, Granularity::Hour)) d.hour = static_cast<int>(*h);
    }
    if (auto n = first(Granularity::Minute)) {
        if (auto m = granule_value(store, *n, Granularity::Minute)) d.minute = static_cast<int>(*m);
    }
    if (auto n = first(Granularity::Second)) {
        if (auto s = granule_value(store, *n, Granularity::Second)) d.second = static_cast<int>(*s);
    }
    if (d.empty()) return std::nullopt;
    return d;
}

/// Relation targets lifted so far in one call; each target is lifted once and cycles are cut.
struct RelationMemo {
    std::map<Term, Indirect<Interval>> done;
    std::set<Term> active;
};

std::optional<Interval> lift_interval_at(const Store& store, const Term& node, const LiftOptions& options,
                                         int depth, RelationMemo& memo);

std::optional<Cycle> lift_cycle_at(const Store& store, const Term& node, const LiftOptions& options, int depth,
                                   RelationMemo& memo) {
    if (depth > options.max_depth) return std::nullopt;
    const auto& v = vocab();
    std::optional<Granularity> every;
    for (const Term& e : store.objects(node, v.every)) {
        if ((every = granularity_of_node(store, e, options))) break;
    }
    if (!every) return std::nullopt;
    Cycle c;
    c.every = *every;
    for (const Term& x : store.objects(node, v.exp)) {
        if (!has_type(store, x, v.during)) continue;
        if (auto occ = lift_interval_at(store, x, options, depth + 1, memo)) {
            c.occurrence = *occ;
            break;
        }
    }
    if (auto s = integer_of(store, node, v.sample)) c.sample = *s;
    return c;
}

std::optional<Interval> lift_interval_at(const Store& store, const Term& node, const LiftOptions& options,
                                         int depth, RelationMemo& memo) {
    if (depth > options.max_depth) return std::nullopt;
    const auto& v = vocab();
    Interval i;
    auto date_of = [&](const Term& p) -> std::optional<PartialDate> {
        for (const Term& n : datation_nodes(store, node, p)) {
            if (auto d = lift_date_at(store, n, options, depth + 1)) return d;
        }
        return std::nullopt;
    };
    i.date = date_of(v.has_date);
    i.begin = date_of(v.has_begin);
    i.end = date_of(v.has_end);
    for (const Term& n : store.objects(node, v.has_duration)) {
        if ((i.duration = lift_duration(store, n))) break;
    }
    for (const Term& x : store.objects(node, v.exp)) {
        if (!has_type(store, x, v.cycle)) continue;
        if (auto c = lift_cycle_at(store, x, options, depth + 1, memo)) {
            i.inner_cycle = *c;
            break;
        }
    }
    for (AllenKind kind : {AllenKind::Before, AllenKind::After}) {
        const Term& p = kind == AllenKind::Before ? v.before : v.after;
        for (const Term& target : store.objects(node, p)) {
            if (target.is_iri() && !has_type(store, target, v.during)) {
                i.relations.push_back(AllenRelation{kind, target});
            } else if (has_type(store, target, v.period)) {
                if (auto r = store.object(target, v.rdf_value)) {
                    i.relations.push_back(AllenRelation{kind, PeriodMarker{*r}});
                }
            } else if (has_type(store, target, v.during)) {
                if (auto it = memo.done.find(target); it != memo.done.end()) {
                    i.relations.push_back(AllenRelation{kind, it->second});
                } else if (memo.active.insert(target).second) {
                    auto inner = lift_interval_at(store, target, options, depth + 1, memo);
                    memo.active.erase(target);
                    if (inner) {
                        Indirect<Interval> shared(std::move(*inner));
                        memo.done.emplace(target, shared);
                        i.relations.push_back(AllenRelation{kind, shared});
                    }
                }
            }
        }
    }
    return i;
}

}  // namespace

bool has_type(const Store& store, const Term& node, const Term& cls) {
    return store.contains(node, vocab().rdf_type, cls);
}

std::optional<Granularity> granularity_of_node(const Store& store, const Term& node, const LiftOptions& options) {
    const auto& v = vocab();
    std::optional<Granularity> best;
    auto consider = [&](Granularity g) {
        if (!best || is_finer(g, *best)) best = g;
    };
    for (const Term& t : types_of(store, node)) {
        if (auto g = v.granularity_of_class(t)) {
            consider(*g);
        } else if (v.weekday_of_class(t) || t == v.week_day || t == v.generic_day) {
            consider(Granularity::Day);
        } else if (v.month_of_class(t)) {
            consider(Granularity::Month);
        } else if (t == v.leap_year || t == v.common_year) {
            consider(Granularity::Year);
        } else if (auto local = huto_local(t); !local.empty() && options.generic_days->find(local)) {
            consider(Granularity::Day);
        }
    }
    return best;
}

Term lower(Store& store, const PartialDate& date) {
    const auto& v = vocab();
    const Term node = store.fresh_blank();
    store.insert(node, v.rdf_type, v.date);
    auto link = [&](Granularity g, const Term& granule) {
        store.insert(node, v.granule(g).has_property, granule);
    };
    if (date.century) link(Granularity::Century, granule_node(store, Granularity::Century, date.century));
    if (date.year) link(Granularity::Year, granule_node(store, Granularity::Year, date.year));
    if (date.month) {
        const Term m = granule_node(store, Granularity::Month, *date.month);
        if (*date.month >= 1 && *date.month <= 12) store.insert(m, v.rdf_type, v.month_name(*date.month));
        link(Granularity::Month, m);
    }
    const bool day_node = date.day_kind || date.day_of_month;
    if (day_node) {
        const Term d = store.fresh_blank();
        if (date.day_kind) {
            std::visit(
                [&](const auto& k) {
                    using T = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<T, PlainDay>) {
                        store.insert(d, v.rdf_type, v.granule(Granularity::Day).unit_class);
                    } else if constexpr (std::is_same_v<T, Weekday>) {
                        store.insert(d, v.rdf_type, v.weekday_class(k));
                    } else {
                        store.insert(d, v.rdf_type, huto_iri(k.name));
                    }
                },
                *date.day_kind);
        }
        if (date.day_of_month) store.insert(d, v.granule(Granularity::Day).value_property, Term::integer(*date.day_of_month));
        if (date.week_of_month) store.insert(d, v.week, Term::integer(*date.week_of_month));
        if (date.context) store.insert(d, v.has_context, lower(store, *date.context));
        link(Granularity::Day, d);
    } else if (date.week_of_month) {
        link(Granularity::Week, granule_node(store, Granularity::Week, date.week_of_month));
    }
    if (date.hour) link(Granularity::Hour, granule_node(store, Granularity::Hour, date.hour));
    if (date.minute) link(Granularity::Minute, granule_node(store, Granularity::Minute, date.minute));
    if (date.second) link(Granularity::Second, granule_node(store, Granularity::Second, date.second));
    return node;
}

Term lower(Store& store, const Duration& duration) {
    const auto& v = vocab();
    const Term node = store.fresh_blank();
    store.insert(node, v.rdf_type, v.duration);
    for (const auto& [g, amount] : duration.granules()) {
        const Term granule = store.fresh_blank();
        store.insert(granule, v.rdf_type, v.granule(g).unit_class);
        store.insert(granule, v.value, Term::integer(amount));
        store.insert(node, v.granule(g).has_property, granule);
    }
    return node;
}

Term lower(Store& store, const Interval& interval) {
    const auto& v = vocab();
    const Term node = store.fresh_blank();
    store.insert(node, v.rdf_type, v.during);
    if (interval.date) store.insert(node, v.has_date, lower(store, *interval.date));
    if (interval.begin) store.insert(node, v.has_begin, lower(store, *interval.begin));
    if (interval.end) store.insert(node, v.has_end, lower(store, *interval.end));
    if (interval.duration) store.insert(node, v.has_duration, lower(store, *interval.duration));
    if (interval.inner_cycle) store.insert(node, v.exp, lower(store, *interval.inner_cycle));
    for (const auto& rel : interval.relations) {
        store.insert(node, rel.kind == AllenKind::Before ? v.before : v.after, lower_operand(store, rel.target));
    }
    return node;
}

Term lower(Store& store, const Cycle& cycle) {
    const auto& v = vocab();
    const Term node = store.fresh_blank();
    store.insert(node, v.rdf_type, v.cycle);
    store.insert(node, v.every, granule_node(store, cycle.every, std::nullopt));
    if (cycle.occurrence) store.insert(node, v.exp, lower(store, *cycle.occurrence));
    if (cycle.sample) store.insert(node, v.sample, Term::integer(*cycle.sample));
    return node;
}

Term lower(Store& store, const PeriodMarker& marker) {
    const auto& v = vocab();
    const Term node = store.fresh_blank();
    store.insert(node, v.rdf_type, v.period);
    store.insert(node, v.rdf_value, marker.resource);
    return node;
}

Term lower(Store& store, const AnnotationTarget& target) {
    const auto& v = vocab();
    return std::visit(
        [&](const auto& t) -> Term {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ResourceTarget>) {
                const Term node = store.fresh_blank();
                store.insert(node, v.rdf_type, v.temporal_thing);
                store.insert(node, v.rdf_value, t.iri);
                return node;
            } else if constexpr (std::is_same_v<T, ReifiedTarget>) {
                return store.reify(t.subject, t.predicate, t.object);
            } else {
                const Term node = store.fresh_blank();
                store.insert(node, v.rdf_type, v.graph);
                store.insert(node, v.uri, t.iri);
                return node;
            }
        },
        target);
}

Term lower(Store& store, const TemporalAnnotation& annotation) {
    const Term root = std::visit([&](const auto& w) { return lower(store, w); }, annotation.when);
    for (const auto& target : annotation.targets) store.insert(root, vocab().exp, lower(store, target));
    return root;
}

Triple lower(Store& store, const AllenLink& link) {
    const auto& v = vocab();
    const Term left = std::visit(
        [&](const auto& x) -> Term {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Term>) {
                return x;
            } else {
                return lower(store, *x);
            }
        },
        link.left);
    const Term right = lower_operand(store, link.right);
    Triple t{left, link.relation == AllenKind::Before ? v.before : v.after, right, std::nullopt};
    store.insert(t);
    return t;
}

std::optional<PartialDate> lift_date(const Store& store, const Term& node, const LiftOptions& options) {
    return lift_date_at(store, node, options, 0);
}

std::optional<Duration> lift_duration(const Store& store, const Term& node) {
    const auto& v = vocab();
    std::map<Granularity, std::int64_t> granules;
    for (Granularity g : kAllGranularities) {
        for (const Term& n : store.objects(node, v.granule(g).has_property)) {
            if (auto amount = granule_value(store, n, g)) {
                granules[g] = *amount;
                break;
            }
        }
    }
    if (granules.empty()) return std::nullopt;
    for (const auto& [g, n] : granules) {
        if (n <= 0) return std::nullopt;
    }
    return Duration::of(granules);
}

std::optional<Interval> lift_interval(const Store& store, const Term& node, const LiftOptions& options) {
    RelationMemo memo;
    memo.active.insert(node);
    return lift_interval_at(store, node, options, 0, memo);
}

std::optional<Cycle> lift_cycle(const Store& store, const Term& node, const LiftOptions& options) {
    RelationMemo memo;
    return lift_cycle_at(store, node, options, 0, memo);
}

std::optional<AnnotationTarget> lift_target(const Store& store, const Term& node) {
    const auto& v = vocab();
    if (auto g = store.object(node, v.uri)) return GraphTarget{*g};
    const auto s = store.object(node, v.rdf_subject);
    const auto p = store.object(node, v.rdf_predicate);
    const auto o = store.object(node, v.rdf_object);
    if (s && p && o) return ReifiedTarget{*s, *p, *o};
    if (has_type(store, node, v.period)) return std::nullopt;
    if (auto r = store.object(node, v.rdf_value)) return ResourceTarget{*r};
    return std::nullopt;
}

std::optional<TemporalAnnotation> lift_annotation(const Store& store, const Term& node,
                                                  const LiftOptions& options) {
    const auto& v = vocab();
    TemporalAnnotation a;
    if (has_type(store, node, v.cycle)) {
        auto c = lift_cycle(store, node, options);
        if (!c) return std::nullopt;
        a.when = *c;
    } else {
        auto i = lift_interval(store, node, options);
        if (!i) return std::nullopt;
        a.when = *i;
    }
    for (const Term& x : store.objects(node, v.exp)) {
        if (has_type(store, x, v.during) || has_type(store, x, v.cycle)) continue;
        if (auto t = lift_target(store, x)) a.targets.push_back(*t);
    }
    return a;
}

std::optional<AllenLink> lift_allen_link(const Store& store, const Triple& triple, const LiftOptions& options) {
    const auto& v = vocab();
    AllenLink link;
    if (triple.predicate == v.before) {
        link.relation = AllenKind::Before;
    } else if (triple.predicate == v.after) {
        link.relation = AllenKind::After;
    } else {
        return std::nullopt;
    }
    if (has_type(store, triple.subject, v.during)) {
        auto i = lift_interval(store, triple.subject, options);
        if (!i) return std::nullopt;
        link.left = Indirect<Interval>(*i);
    } else {
        link.left = triple.subject;
    }
    if (has_type(store, triple.object, v.period)) {
        auto r = store.object(triple.object, v.rdf_value);
        if (!r) return std::nullopt;
        link.right = PeriodMarker{*r};
    } else if (has_type(store, triple.object, v.during)) {
        auto i = lift_interval(store, triple.object, options);
        if (!i) return std::nullopt;
        link.right = Indirect<Interval>(*i);
    } else {
        link.right = triple.object;
    }
    return link;
}

}  // namespace huto
