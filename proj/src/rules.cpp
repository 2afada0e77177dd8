#include "huto/rules.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "huto/annotations.hpp"
#include "huto/error.hpp"
#include "huto/lowering.hpp"
#include "huto/schema.hpp"
#include "huto/vocab.hpp"

namespace huto {

namespace {

using Adjacency = std::map<Term, std::set<Term>>;

/// Everything reachable from `start` in one or more steps.
std::set<Term> reachable(const Adjacency& edges, const Term& start) {
    std::set<Term> seen;
    std::deque<Term> queue{start};
    while (!queue.empty()) {
        const Term x = queue.front();
        queue.pop_front();
        auto it = edges.find(x);
        if (it == edges.end()) continue;
        for (const Term& y : it->second) {
            if (seen.insert(y).second) queue.push_back(y);
        }
    }
    return seen;
}

Adjacency closure_of(const Adjacency& edges) {
    Adjacency out;
    for (const auto& [x, ys] : edges) out[x] = reachable(edges, x);
    return out;
}

Adjacency edges_of(const Store& store, const Term& p) {
    Adjacency out;
    for (const auto& [s, o] : store.pairs(p)) out[s].insert(o);
    return out;
}

/// Collects head triples first so that a pass never observes its own output.
class Batch {
public:
    void add(const Term& s, const Term& p, const Term& o, std::optional<Term> g = std::nullopt) {
        pending_.push_back(Triple{s, p, o, std::move(g)});
    }
    std::size_t flush(Store& store) {
        std::size_t added = 0;
        for (const Triple& t : pending_) added += store.insert(t) ? 1 : 0;
        pending_.clear();
        return added;
    }

private:
    std::vector<Triple> pending_;
};

std::size_t rdfs_pass(Store& store) {
    const auto& v = vocab();
    const Adjacency classes = closure_of(edges_of(store, v.rdfs_sub_class_of));
    const Adjacency properties = closure_of(edges_of(store, v.rdfs_sub_property_of));
    Batch batch;
    for (const auto& [c, supers] : classes) {
        for (const Term& d : supers) batch.add(c, v.rdfs_sub_class_of, d);
    }
    for (const auto& [p, supers] : properties) {
        for (const Term& q : supers) batch.add(p, v.rdfs_sub_property_of, q);
    }
    for (const Triple& t : store.triples()) {
        if (t.predicate == v.rdf_type) {
            auto it = classes.find(t.object);
            if (it != classes.end()) {
                for (const Term& d : it->second) batch.add(t.subject, v.rdf_type, d, t.graph);
            }
        }
        auto it = properties.find(t.predicate);
        if (it != properties.end()) {
            for (const Term& q : it->second) {
                if (q.is_iri()) batch.add(t.subject, q, t.object, t.graph);
            }
        }
    }
    return batch.flush(store);
}

template <class Pass>
std::size_t to_fixpoint(Store& store, Pass pass) {
    std::size_t total = 0;
    for (;;) {
        const std::size_t n = pass(store);
        if (n == 0) return total;
        total += n;
    }
}

std::optional<std::int64_t> year_value(const Store& store, const Term& node) {
    for (const Term& y : store.objects(node, vocab().granule(Granularity::Year).value_property)) {
        if (y.is_integer()) return y.integer_value();
    }
    return std::nullopt;
}

std::size_t mark_year(Store& store, const Term& node, bool leap) {
    const auto& v = vocab();
    bool fresh = store.insert(node, v.rdf_type, leap ? v.leap_year : v.common_year);
    fresh = store.insert(node, v.day_count, Term::integer(leap ? 366 : 365)) || fresh;
    return fresh ? 1 : 0;
}

std::vector<Term> year_nodes(const Store& store) {
    std::set<Term> out;
    for (const auto& [s, o] : store.pairs(vocab().granule(Granularity::Year).value_property)) {
        if (o.is_integer() && o.integer_value() >= 1) out.insert(s);
    }
    return {out.begin(), out.end()};
}

std::vector<Term> datation_objects(const Store& store, const Term& node, const Term& p) {
    std::vector<Term> out;
    for (const Term& d : store.objects(node, p)) {
        if (!has_type(store, d, vocab().period)) out.push_back(d);
    }
    return out;
}

bool uses_period(const Store& store, const Term& node) {
    const auto& v = vocab();
    for (const Term* p : {&v.has_date, &v.has_begin, &v.has_end}) {
        for (const Term& d : store.objects(node, *p)) {
            if (has_type(store, d, v.period)) return true;
        }
    }
    return false;
}

/// During nodes that date `resource`, other than `exclude`, with at least one plain datation arc.
std::vector<Term> dated_intervals(const Store& store, const Term& resource, const Term& exclude) {
    const auto& v = vocab();
    std::vector<Term> out;
    for (const Term& t : direct_annotators(store, resource)) {
        if (t == exclude || !has_type(store, t, v.during)) continue;
        bool dated = false;
        for (const Term* p : {&v.has_date, &v.has_begin, &v.has_end}) {
            dated = dated || !datation_objects(store, t, *p).empty();
        }
        if (dated) out.push_back(t);
    }
    return out;
}

std::optional<PartialDate> resolved_begin(const Store& store, const Term& begin_node, const RuleContext& ctx) {
    LiftOptions options;
    options.generic_days = ctx.generic_days;
    auto begin = lift_date(store, begin_node, options);
    if (!begin) return std::nullopt;
    if (is_generic(begin->day_kind)) {
        std::optional<PartialDate> reference;
        if (begin->context) {
            reference = *begin->context;
        } else {
            reference = ctx.today;
        }
        if (!reference) return std::nullopt;
        begin = resolve_deictic(*begin, *reference);
    }
    return begin;
}

std::size_t allen_pass(Store& store) {
    const auto& v = vocab();
    // `precedes` holds x before y, whichever way it was written.
    Adjacency precedes;
    for (const auto& [x, y] : store.pairs(v.before)) precedes[x].insert(y);
    for (const auto& [x, y] : store.pairs(v.after)) precedes[y].insert(x);

    // A Period stands for its resource.
    std::map<Term, std::vector<Term>> aliases;
    auto alias_of = [&](const Term& node) -> const std::vector<Term>& {
        auto it = aliases.find(node);
        if (it != aliases.end()) return it->second;
        std::vector<Term> out;
        if (has_type(store, node, v.period)) {
            for (const Term& r : store.objects(node, v.rdf_value)) out.push_back(r);
        } else if (has_type(store, node, v.during)) {
            out = annotated_resources(store, node);
        } else if (node.is_iri()) {
            for (const Term& i : direct_annotators(store, node)) {
                if (has_type(store, i, v.during)) out.push_back(i);
            }
        }
        return aliases.emplace(node, std::move(out)).first->second;
    };

    Adjacency extended = precedes;
    for (const auto& [x, ys] : precedes) {
        for (const Term& y : ys) {
            std::vector<Term> lefts{x};
            std::vector<Term> rights{y};
            for (const Term& a : alias_of(x)) lefts.push_back(a);
            for (const Term& b : alias_of(y)) rights.push_back(b);
            for (const Term& a : lefts) {
                for (const Term& b : rights) extended[a].insert(b);
            }
        }
    }

    Batch batch;
    for (const auto& [x, ys] : closure_of(extended)) {
        for (const Term& y : ys) {
            batch.add(x, v.before, y);
            if (!y.is_literal()) batch.add(y, v.after, x);
        }
    }
    return batch.flush(store);
}

std::size_t included_pass(Store& store) {
    const auto& v = vocab();
    const Adjacency included = closure_of(edges_of(store, v.included));
    const Adjacency sub_classes = closure_of(edges_of(store, v.rdfs_sub_class_of));
    Batch batch;
    for (const auto& [d2, d1s] : included) {
        for (const Term& d1 : d1s) batch.add(d2, v.included, d1);
    }
    for (const auto& [d3, supers] : sub_classes) {
        for (const Term& d2 : supers) {
            auto it = included.find(d2);
            if (it == included.end()) continue;
            for (const Term& d1 : it->second) batch.add(d3, v.included, d1);
        }
    }
    return batch.flush(store);
}

}  // namespace

std::size_t rdfs_entail(Store& store) { return to_fixpoint(store, rdfs_pass); }

std::size_t rule_month_names(Store& store) {
    const auto& v = vocab();
    const Term& month = v.granule(Granularity::Month).value_property;
    std::size_t fired = 0;
    for (int m = 1; m <= 12; ++m) {
        for (const Term& node : store.subjects(v.rdf_type, v.month_name(m))) {
            fired += store.insert(node, month, Term::integer(m)) ? 1 : 0;
        }
    }
    for (const auto& [node, value] : store.pairs(month)) {
        if (!value.is_integer() || value.integer_value() < 1 || value.integer_value() > 12) continue;
        fired += store.insert(node, v.rdf_type, v.month_name(static_cast<int>(value.integer_value()))) ? 1 : 0;
    }
    return fired;
}

std::size_t rule_leap_year_mod4(Store& store) {
    std::size_t fired = 0;
    for (const Term& node : year_nodes(store)) {
        const std::int64_t y = *year_value(store, node);
        if (y % 400 == 0) continue;
        fired += mark_year(store, node, y % 4 == 0 && y % 100 != 0);
    }
    return fired;
}

std::size_t rule_leap_year_mod400(Store& store) {
    std::size_t fired = 0;
    for (const Term& node : year_nodes(store)) {
        if (*year_value(store, node) % 400 == 0) fired += mark_year(store, node, true);
    }
    return fired;
}

std::size_t rule_leap_years(Store& store) { return rule_leap_year_mod4(store) + rule_leap_year_mod400(store); }

std::size_t rule_period_dates(Store& store) {
    const auto& v = vocab();
    const std::array<const Term*, 3> datations = {&v.has_date, &v.has_begin, &v.has_end};
    std::size_t fired = 0;
    for (const Term& period : store.subjects(v.rdf_type, v.period)) {
        for (const Term& resource : store.objects(period, v.rdf_value)) {
            for (const Triple& use : store.incoming(period)) {
                const Term& user = use.subject;
                Batch batch;
                for (const Term& source : dated_intervals(store, resource, user)) {
                    auto copy = [&](const Term& from, const Term& target, const Term& as) {
                        for (const Term& d : datation_objects(store, source, from)) batch.add(target, as, d);
                    };
                    if (use.predicate == v.has_date) {
                        for (const Term* p : datations) copy(*p, user, *p);
                    } else if (use.predicate == v.has_begin) {
                        copy(v.has_date, user, v.has_begin);
                        copy(v.has_begin, user, v.has_begin);
                    } else if (use.predicate == v.has_end) {
                        copy(v.has_date, user, v.has_end);
                        copy(v.has_end, user, v.has_end);
                    } else {
                        for (const Term* p : datations) copy(*p, period, *p);
                    }
                }
                fired += batch.flush(store) > 0 ? 1 : 0;
            }
        }
    }
    return fired;
}

std::size_t rule_duration_end(Store& store, Granularity unit, const RuleContext& ctx) {
    const auto& v = vocab();
    std::size_t fired = 0;
    std::vector<std::pair<Term, Term>> begins = store.pairs(v.has_begin);
    for (const auto& [interval, begin_node] : begins) {
        if (store.object(interval, v.has_end)) continue;
        if (has_type(store, begin_node, v.period)) continue;
        for (const Term& duration_node : store.objects(interval, v.has_duration)) {
            const auto duration = lift_duration(store, duration_node);
            if (!duration || duration->finest() != unit) continue;
            try {
                const auto begin = resolved_begin(store, begin_node, ctx);
                if (!begin) continue;
                const PartialDate end = add_duration(*begin, *duration);
                const Term end_node = lower(store, end);
                for (const Term& cls : store.objects(begin_node, v.rdf_type)) store.insert(end_node, v.rdf_type, cls);
                store.insert(interval, v.has_end, end_node);
                ++fired;
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Underspecified && e.code() != ErrorCode::InvalidYear &&
                    e.code() != ErrorCode::InvalidDate) {
                    throw;
                }
            }
        }
    }
    return fired;
}

std::size_t rule_duration_end(Store& store, const RuleContext& ctx) {
    std::size_t fired = 0;
    for (Granularity g : kAllGranularities) fired += rule_duration_end(store, g, ctx);
    return fired;
}

std::size_t rule_allen_closure(Store& store) { return to_fixpoint(store, allen_pass); }

std::size_t rule_included_closure(Store& store) { return to_fixpoint(store, included_pass); }

std::vector<Rule> default_rules() {
    std::vector<Rule> rules;
    auto plain = [&](std::string name, std::string group, std::size_t (*fn)(Store&)) {
        rules.push_back(Rule{std::move(name), std::move(group),
                             [fn](Store& s, const RuleContext&) { return fn(s); }});
    };
    plain("rdfs_entail", "rdfs", rdfs_entail);
    plain("month_names", "month_names", rule_month_names);
    plain("leap_year_mod4", "leap_years", rule_leap_year_mod4);
    plain("leap_year_mod400", "leap_years", rule_leap_year_mod400);
    plain("period_dates", "period_dates", rule_period_dates);
    for (Granularity g : kAllGranularities) {
        std::string name = "duration_end_" + std::string(granularity_name(g));
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        rules.push_back(Rule{std::move(name), "duration_end", [g](Store& s, const RuleContext& ctx) {
                                 return rule_duration_end(s, g, ctx);
                             }});
    }
    plain("allen_closure", "allen", rule_allen_closure);
    plain("included_closure", "included", rule_included_closure);
    return rules;
}

std::vector<Rule> without(std::vector<Rule> rules, const std::set<std::string>& skip) {
    std::erase_if(rules, [&](const Rule& r) { return skip.count(r.name) || skip.count(r.group); });
    return rules;
}

std::size_t FixedPointReport::total_firings() const {
    std::size_t n = 0;
    for (const auto& [name, count] : per_rule_firings) n += count;
    return n;
}

FixedPointReport run_all(Store& store, const std::vector<Rule>& rules, const RunOptions& options) {
    FixedPointReport report;
    report.triples_before = store.size();
    if (options.load_schema) load_schema(store);
    for (const Rule& r : rules) report.per_rule_firings[r.name] = 0;

    const bool entail = std::any_of(rules.begin(), rules.end(), [](const Rule& r) { return r.group == "rdfs"; });
    if (entail) report.per_rule_firings["rdfs_entail"] += rdfs_entail(store);
    report.triples_after_entailment = store.size();

    for (;;) {
        if (report.rounds >= options.max_rounds) {
            throw Error(ErrorCode::RuleDivergence,
                        "no fixed point after " + std::to_string(options.max_rounds) + " rounds");
        }
        ++report.rounds;
        bool changed = false;
        for (const Rule& r : rules) {
            const std::size_t before = store.size();
            const std::size_t n = r.apply(store, options.context);
            // Quiescence is decided by store growth, not by what a rule reports.
            if (store.size() == before) continue;
            report.per_rule_firings[r.name] += n;
            changed = true;
        }
        if (!changed) break;
    }
    report.triples_after = store.size();
    return report;
}

FixedPointReport run_all(Store& store, const RunOptions& options) { return run_all(store, default_rules(), options); }

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::CycleGranularity: return "CycleGranularity";
        case ViolationKind::DuringEnclosure: return "DuringEnclosure";
        case ViolationKind::WeekdayMismatch: return "WeekdayMismatch";
        case ViolationKind::InvalidMonth: return "InvalidMonth";
        case ViolationKind::AllenCycle: return "AllenCycle";
        case ViolationKind::UnderspecifiedBegin: return "UnderspecifiedBegin";
        case ViolationKind::PeriodChain: return "PeriodChain";
    }
    return "Unknown";
}

namespace {

std::optional<Granularity> own_granularity(const Store& store, const Term& interval) {
    const auto& v = vocab();
    for (const Term* p : {&v.has_date, &v.has_begin}) {
        for (const Term& d : datation_objects(store, interval, *p)) {
            if (auto date = lift_date(store, d)) return finest_granularity(*date);
        }
    }
    return std::nullopt;
}

std::optional<Granularity> every_of(const Store& store, const Term& cycle) {
    for (const Term& e : store.objects(cycle, vocab().every)) {
        if (auto g = granularity_of_node(store, e)) return g;
    }
    return std::nullopt;
}

std::string name_of(Granularity g) { return std::string(granularity_name(g)); }

}  // namespace

std::vector<ConsistencyViolation> check_cycle_consistency(const Store& store) {
    const auto& v = vocab();
    std::set<ConsistencyViolation> out;

    for (const Term& cycle : store.subjects(v.rdf_type, v.cycle)) {
        const auto every = every_of(store, cycle);
        if (!every) continue;
        for (const Term& occurrence : store.objects(cycle, v.exp)) {
            if (!has_type(store, occurrence, v.during)) continue;
            const auto g = own_granularity(store, occurrence);
            if (g && !is_coarser(*every, *g)) {
                out.insert({cycle, ViolationKind::CycleGranularity,
                            "frequency " + name_of(*every) + " is not coarser than occurrence granularity " +
                                name_of(*g)});
            }
        }
    }

    for (const Term& during : store.subjects(v.rdf_type, v.during)) {
        const auto g = own_granularity(store, during);
        if (!g) continue;
        for (const Term& cycle : store.objects(during, v.exp)) {
            if (!has_type(store, cycle, v.cycle)) continue;
            const auto every = every_of(store, cycle);
            if (every && !is_coarser(*g, *every)) {
                out.insert({during, ViolationKind::DuringEnclosure,
                            "date granularity " + name_of(*g) + " is not coarser than enclosed frequency " +
                                name_of(*every)});
            }
        }
    }

    std::set<Term> dates;
    for (const Term* p : {&v.has_date, &v.has_begin, &v.has_end, &v.has_context}) {
        for (const auto& [s, o] : store.pairs(*p)) dates.insert(o);
    }
    for (const Term& d : dates) {
        const auto date = lift_date(store, d);
        if (!date || !date->day_kind || !std::holds_alternative<Weekday>(*date->day_kind)) continue;
        const auto civil = civil_date(*date);
        if (!civil || !is_valid_civil(*civil)) continue;
        const Weekday stated = std::get<Weekday>(*date->day_kind);
        const Weekday actual = weekday_of(*civil);
        if (stated != actual) {
            out.insert({d, ViolationKind::WeekdayMismatch,
                        to_string(*date) + " falls on " + std::string(weekday_name(actual))});
        }
    }
    return {out.begin(), out.end()};
}

std::vector<ConsistencyViolation> check_consistency(const Store& store) {
    const auto& v = vocab();
    auto base = check_cycle_consistency(store);
    std::set<ConsistencyViolation> out(base.begin(), base.end());

    for (const auto& [node, value] : store.pairs(v.granule(Granularity::Month).value_property)) {
        if (value.is_integer() && (value.integer_value() < 1 || value.integer_value() > 12)) {
            out.insert({node, ViolationKind::InvalidMonth, "month " + std::to_string(value.integer_value())});
        }
    }
    for (const Term* p : {&v.before, &v.after}) {
        for (const auto& [x, y] : store.pairs(*p)) {
            if (x == y) out.insert({x, ViolationKind::AllenCycle, std::string(huto_local(*p)) + " itself"});
        }
    }
    for (const auto& [interval, begin] : store.pairs(v.has_begin)) {
        if (store.object(interval, v.has_duration) && !store.object(interval, v.has_end)) {
            out.insert({interval, ViolationKind::UnderspecifiedBegin,
                        "begin cannot carry the duration; no end derived"});
        }
    }
    for (const Term& period : store.subjects(v.rdf_type, v.period)) {
        for (const Term& resource : store.objects(period, v.rdf_value)) {
            for (const Term& t : direct_annotators(store, resource)) {
                if (has_type(store, t, v.during) && uses_period(store, t)) {
                    out.insert({period, ViolationKind::PeriodChain,
                                "referent " + to_string(resource) + " is itself dated by a Period"});
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace huto
