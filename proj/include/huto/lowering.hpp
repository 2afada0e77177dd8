#pragma once

#include <optional>

#include "huto/model.hpp"
#include "huto/store.hpp"

namespace huto {

// Lowering writes a model value into the default graph as fresh blank-node
// structures and returns the root node. Lifting reads the same shapes back and
// tolerates the extra triples added by normalization and RDFS entailment.

Term lower(Store& store, const PartialDate& date);
Term lower(Store& store, const Duration& duration);
Term lower(Store& store, const Interval& interval);
Term lower(Store& store, const Cycle& cycle);
Term lower(Store& store, const PeriodMarker& marker);
Term lower(Store& store, const AnnotationTarget& target);
Term lower(Store& store, const TemporalAnnotation& annotation);
Triple lower(Store& store, const AllenLink& link);

struct LiftOptions {
    const GenericDayRegistry* generic_days = &GenericDayRegistry::builtin();
    int max_depth = 16;
};

bool has_type(const Store& store, const Term& node, const Term& cls);

/// Granularity denoted by a node's classes (Sunday counts as Day, April as Month).
std::optional<Granularity> granularity_of_node(const Store& store, const Term& node,
                                               const LiftOptions& options = {});

std::optional<PartialDate> lift_date(const Store& store, const Term& node, const LiftOptions& options = {});
std::optional<Duration> lift_duration(const Store& store, const Term& node);
std::optional<Interval> lift_interval(const Store& store, const Term& node, const LiftOptions& options = {});
std::optional<Cycle> lift_cycle(const Store& store, const Term& node, const LiftOptions& options = {});
std::optional<AnnotationTarget> lift_target(const Store& store, const Term& node);
std::optional<TemporalAnnotation> lift_annotation(const Store& store, const Term& node,
                                                  const LiftOptions& options = {});
std::optional<AllenLink> lift_allen_link(const Store& store, const Triple& triple,
                                         const LiftOptions& options = {});

}  // namespace huto
