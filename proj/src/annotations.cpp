#include "huto/annotations.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "huto/lowering.hpp"
#include "huto/vocab.hpp"

namespace huto {

namespace {

bool is_interval_node(const Store& store, const Term& node) {
    const auto& v = vocab();
    return has_type(store, node, v.during) || has_type(store, node, v.cycle);
}

bool is_structural(const Term& predicate) {
    const auto& v = vocab();
    return predicate != v.before && predicate != v.after;
}

}  // namespace

std::vector<Term> direct_annotators(const Store& store, const Term& resource) {
    const auto& v = vocab();
    std::set<Term> out;
    for (const Term* p : {&v.rdf_value, &v.rdf_subject, &v.rdf_object}) {
        for (const Term& carrier : store.subjects(*p, resource)) {
            if (has_type(store, carrier, v.period)) continue;
            for (const Term& x : store.subjects(v.exp, carrier)) {
                if (is_interval_node(store, x) && !has_type(store, x, v.period)) out.insert(x);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Term> annotated_resources(const Store& store, const Term& interval) {
    const auto& v = vocab();
    std::set<Term> out;
    for (const Term& carrier : store.objects(interval, v.exp)) {
        if (is_interval_node(store, carrier) || has_type(store, carrier, v.period)) continue;
        for (const Term* p : {&v.rdf_value, &v.rdf_subject, &v.rdf_object}) {
            for (const Term& r : store.objects(carrier, *p)) {
                if (r.is_iri()) out.insert(r);
            }
        }
    }
    return {out.begin(), out.end()};
}

bool graph_mentions(const Store& store, const Term& graph, const Term& resource) {
    const Pattern as_subject{resource, var("p"), var("o"), Slot{graph}};
    if (!store.match(as_subject, GraphScope::All).empty()) return true;
    const Pattern as_object{var("s"), var("p"), resource, Slot{graph}};
    return !store.match(as_object, GraphScope::All).empty();
}

bool is_temporal_root(const Store& store, const Term& node) {
    if (!is_interval_node(store, node) || has_type(store, node, vocab().period)) return false;
    for (const Triple& t : store.incoming(node, GraphScope::All)) {
        if (is_structural(t.predicate)) return false;
    }
    return true;
}

std::vector<Term> roots_above(const Store& store, const Term& node) {
    std::set<Term> roots;
    std::set<Term> seen{node};
    std::deque<Term> queue{node};
    while (!queue.empty()) {
        const Term x = queue.front();
        queue.pop_front();
        if (is_temporal_root(store, x)) roots.insert(x);
        for (const Term& parent : store.subjects(vocab().exp, x)) {
            if (seen.insert(parent).second) queue.push_back(parent);
        }
    }
    return {roots.begin(), roots.end()};
}

bool is_temporal_node(const Store& store, const Term& node) {
    if (node.is_blank()) return true;
    const auto& v = vocab();
    for (const Term* cls : {&v.during, &v.cycle, &v.period, &v.date, &v.duration, &v.temporal_thing, &v.graph}) {
        if (has_type(store, node, *cls)) return true;
    }
    return store.object(node, v.rdf_subject).has_value();
}

}  // namespace huto
