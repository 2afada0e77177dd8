#pragma once

#include <vector>

#include "huto/store.hpp"

namespace huto {

// Navigation over the annotation shapes shared by the rules and the queries.
// All functions read the default graph only, except where graph membership is
// the point (`graph_mentions`).

/// Nodes typed During or Cycle that reach `resource` through one `exp` arc to a
/// TemporalThing (rdf:value) or a reified statement (rdf:subject / rdf:object).
std::vector<Term> direct_annotators(const Store& store, const Term& resource);

/// Resources an interval annotates through one `exp` arc (value, subject or object).
std::vector<Term> annotated_resources(const Store& store, const Term& interval);

/// True when `graph` holds a triple with `resource` as subject or object.
bool graph_mentions(const Store& store, const Term& graph, const Term& resource);

/// During/Cycle node that is not a Period and has no incoming structural arc.
/// Incoming before/after arcs do not make a node nested.
bool is_temporal_root(const Store& store, const Term& node);

/// Roots whose `exp` chain reaches `node` (the node itself when it is a root).
std::vector<Term> roots_above(const Store& store, const Term& node);

/// True for nodes that belong to the temporal vocabulary rather than the domain data.
bool is_temporal_node(const Store& store, const Term& node);

}  // namespace huto
