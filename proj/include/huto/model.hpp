#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "huto/calendar.hpp"
#include "huto/granularity.hpp"
#include "huto/term.hpp"

namespace huto {

/// Optional heap-held value with deep comparison; used for the recursive model types.
template <class T>
class Indirect {
public:
    Indirect() = default;
    Indirect(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)

    bool has_value() const noexcept { return ptr_ != nullptr; }
    explicit operator bool() const noexcept { return has_value(); }
    const T& operator*() const { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }

    friend bool operator==(const Indirect& a, const Indirect& b) {
        if (!a.ptr_ || !b.ptr_) return !a.ptr_ && !b.ptr_;
        return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
    }

private:
    std::shared_ptr<const T> ptr_;
};

/// A deictic day such as Today; `offset_days` is relative to the context date.
struct GenericDay {
    std::string name;
    int offset_days = 0;

    bool operator==(const GenericDay&) const = default;
};

/// Vocabulary of deictic days. The built-in set is Today, Yesterday and Tomorrow.
class GenericDayRegistry {
public:
    static const GenericDayRegistry& builtin();

    GenericDayRegistry& add(std::string name, int offset_days);
    std::optional<GenericDay> find(std::string_view name) const;
    const std::vector<GenericDay>& entries() const noexcept { return entries_; }

private:
    std::vector<GenericDay> entries_;
};

GenericDay today();
GenericDay yesterday();
GenericDay tomorrow();

struct PlainDay {
    bool operator==(const PlainDay&) const = default;
};

using DayKind = std::variant<PlainDay, Weekday, GenericDay>;

inline bool is_generic(const std::optional<DayKind>& k) {
    return k && std::holds_alternative<GenericDay>(*k);
}

/// Calendar date where every granule is optional.
struct PartialDate {
    std::optional<std::int64_t> century;
    std::optional<std::int64_t> year;
    std::optional<int> month;
    std::optional<int> week_of_month;
    std::optional<DayKind> day_kind;
    std::optional<int> day_of_month;
    std::optional<int> hour;
    std::optional<int> minute;
    std::optional<int> second;
    /// Anchor for a generic day kind.
    Indirect<PartialDate> context;

    bool empty() const noexcept;
    bool operator==(const PartialDate&) const = default;
};

/// Shorthand for a fully specified civil date with no day kind.
PartialDate make_date(std::int64_t year, int month, int day);

/// Checks the value invariants; throws Error(EmptyDate | InvalidDate).
void validate(const PartialDate& d);

Granularity finest_granularity(const PartialDate& d);

/// Civil date when year, month and day of month are all set.
std::optional<CivilDate> civil_date(const PartialDate& d);

PartialDate resolve_deictic(const PartialDate& d, const PartialDate& reference);

std::string to_string(const PartialDate& d);

/// Multi-granularity span; all amounts strictly positive.
class Duration {
public:
    Duration() = default;
    static Duration of(std::initializer_list<std::pair<Granularity, std::int64_t>> granules);
    static Duration of(const std::map<Granularity, std::int64_t>& granules);

    const std::map<Granularity, std::int64_t>& granules() const noexcept { return granules_; }
    std::int64_t amount(Granularity g) const;
    Granularity finest() const;
    Granularity coarsest() const;

    bool operator==(const Duration&) const = default;

private:
    std::map<Granularity, std::int64_t> granules_;
};

std::string to_string(const Duration& d);

/// End date of a span of length `dur` starting at `start`, inclusive of both ends.
PartialDate add_duration(const PartialDate& start, const Duration& dur);

struct Cycle;
struct Interval;

struct PeriodMarker {
    Term resource;
    bool operator==(const PeriodMarker&) const = default;
};

enum class AllenKind { Before, After };

constexpr AllenKind inverse(AllenKind k) noexcept {
    return k == AllenKind::Before ? AllenKind::After : AllenKind::Before;
}

using AllenOperand = std::variant<Term, PeriodMarker, Indirect<Interval>>;

struct AllenRelation {
    AllenKind kind = AllenKind::Before;
    AllenOperand target;
    bool operator==(const AllenRelation&) const = default;
};

enum class IntervalKind { Closed, Infinite, Undetermined };

/// A convex interval (HuTO During).
struct Interval {
    std::optional<PartialDate> date;
    std::optional<PartialDate> begin;
    std::optional<PartialDate> end;
    std::optional<Duration> duration;
    Indirect<Cycle> inner_cycle;
    std::vector<AllenRelation> relations;

    IntervalKind kind() const noexcept;
    /// Relations compare as a multiset; their order carries no meaning.
    bool operator==(const Interval& other) const;
};

void validate(const Interval& i);

/// A non-convex interval: the occurrence repeats at every `every` unit (or every `sample` units).
struct Cycle {
    Granularity every = Granularity::Year;
    Indirect<Interval> occurrence;
    std::optional<std::int64_t> sample;

    bool operator==(const Cycle&) const = default;
};

void validate(const Cycle& c);

/// Standalone before/after statement between a resource or interval and another operand.
struct AllenLink {
    AllenKind relation = AllenKind::Before;
    std::variant<Term, Indirect<Interval>> left;
    AllenOperand right;
    bool operator==(const AllenLink&) const = default;
};

struct ResourceTarget {
    Term iri;
    bool operator==(const ResourceTarget&) const = default;
    auto operator<=>(const ResourceTarget&) const = default;
};

struct ReifiedTarget {
    Term subject;
    Term predicate;
    Term object;
    bool operator==(const ReifiedTarget&) const = default;
    auto operator<=>(const ReifiedTarget&) const = default;
};

struct GraphTarget {
    Term iri;
    bool operator==(const GraphTarget&) const = default;
    auto operator<=>(const GraphTarget&) const = default;
};

/// What a temporal annotation is attached to (TemporalThing / Graph).
using AnnotationTarget = std::variant<ResourceTarget, ReifiedTarget, GraphTarget>;

std::string to_string(const AnnotationTarget& t);

/// A root temporal node together with the data it annotates.
struct TemporalAnnotation {
    std::variant<Interval, Cycle> when;
    std::vector<AnnotationTarget> targets;
    bool operator==(const TemporalAnnotation&) const = default;
};

}  // namespace huto
