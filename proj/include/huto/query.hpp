#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "huto/model.hpp"
#include "huto/store.hpp"

namespace huto {

/// A top-level temporal node and every triple reachable from it through blank nodes.
struct TemporalityDescription {
    Term root;
    std::vector<Triple> closure;

    bool operator==(const TemporalityDescription&) const = default;
};

/// Roots that date `resource` through a TemporalThing, a reified statement or a named graph.
std::vector<TemporalityDescription> temporality_of(const Store& store, const Term& resource);

struct RecurringMatch {
    AnnotationTarget target;
    TemporalityDescription temporality;
};

/// Targets of cycles repeating every `freq` with no `sample`.
std::vector<RecurringMatch> recurring_resources(const Store& store, Granularity freq);

/// Targets of unsampled cycles that recur on `day`: the frequency or the occurrence names that weekday.
std::vector<RecurringMatch> recurring_resources(const Store& store, Weekday day);

/// IRIs X with `X relation resource` after Allen closure.
/// Throws Error(NotConvexlyDated) when `resource` has no convex temporality.
std::vector<Term> relative_resources(const Store& store, const Term& resource, AllenKind relation);

struct DateQuery {
    std::int64_t year = 1;
    int month = 1;
    int day = 1;
    Weekday weekday = Weekday::Monday;

    /// Query for a civil date with the weekday computed.
    static DateQuery of(std::int64_t year, int month, int day);
};

enum class MatchKind { Interval, Cycle, Period, Indeterminate };

std::string_view to_string(MatchKind kind);

struct DateMatch {
    AnnotationTarget target;
    MatchKind kind = MatchKind::Interval;
    Term root;

    auto operator<=>(const DateMatch&) const = default;
    bool operator==(const DateMatch&) const = default;
};

struct QueryOptions {
    /// Reference date for generic days without a context.
    std::optional<PartialDate> today;
    const GenericDayRegistry* generic_days = &GenericDayRegistry::builtin();
};

/// Day coverage of every temporal root, compiled once and then probed per day.
class TemporalIndex {
public:
    explicit TemporalIndex(const Store& store, const QueryOptions& options = {});
    ~TemporalIndex();
    TemporalIndex(TemporalIndex&&) noexcept;
    TemporalIndex& operator=(TemporalIndex&&) noexcept;

    /// Throws Error(InvalidDate) when the weekday disagrees with the date.
    std::vector<DateMatch> on(const DateQuery& query) const;

    /// Targets whose coverage meets at least one day of [first, last] (day numbers).
    std::vector<AnnotationTarget> overlapping(std::int64_t first, std::int64_t last) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<DateMatch> resources_on(const Store& store, const DateQuery& query, const QueryOptions& options = {});

/// First and last civil day covered by a partial date that names a year or century.
std::optional<std::pair<std::int64_t, std::int64_t>> day_bounds(const PartialDate& date);

/// Targets with at least one covered day in the range. Throws Error(InvalidDate)
/// when begin follows end and Error(RangeTooLarge) when the range exceeds `horizon_days`.
std::vector<AnnotationTarget> resources_in_range(const Store& store, const PartialDate& begin, const PartialDate& end,
                                                 std::int64_t horizon_days, const QueryOptions& options = {});

}  // namespace huto
