#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "huto/model.hpp"
#include "huto/store.hpp"

namespace huto {

struct RuleContext {
    /// Reference date for generic days that carry no context of their own.
    std::optional<PartialDate> today;
    const GenericDayRegistry* generic_days = &GenericDayRegistry::builtin();
};

/// A named monotone rule. `apply` runs one pass and returns how many head
/// instantiations added at least one new triple.
struct Rule {
    std::string name;
    std::string group;
    std::function<std::size_t(Store&, const RuleContext&)> apply;
};

// Individual passes. Closure rules (rdfs, allen, included) run to their own fixed point.
std::size_t rdfs_entail(Store& store);
std::size_t rule_month_names(Store& store);
std::size_t rule_leap_year_mod4(Store& store);
std::size_t rule_leap_year_mod400(Store& store);
std::size_t rule_leap_years(Store& store);
std::size_t rule_period_dates(Store& store);
/// Duration-to-end rule for durations whose finest granularity is `unit`.
std::size_t rule_duration_end(Store& store, Granularity unit, const RuleContext& ctx = {});
/// All eight duration-to-end rules.
std::size_t rule_duration_end(Store& store, const RuleContext& ctx = {});
std::size_t rule_allen_closure(Store& store);
std::size_t rule_included_closure(Store& store);

/// Normalization and inference rules in their default order, RDFS entailment first.
std::vector<Rule> default_rules();

/// Drops every rule whose name or group appears in `skip`.
std::vector<Rule> without(std::vector<Rule> rules, const std::set<std::string>& skip);

struct RunOptions {
    RuleContext context;
    std::size_t max_rounds = 64;
    /// Inserts the schema before running; the insertion is counted after `triples_before`.
    bool load_schema = true;
};

struct FixedPointReport {
    std::size_t rounds = 0;
    std::size_t triples_before = 0;
    std::size_t triples_after_entailment = 0;
    std::size_t triples_after = 0;
    std::map<std::string, std::size_t> per_rule_firings;

    std::size_t total_firings() const;
};

/// Runs RDFS entailment to a fixed point, then every rule round-robin until a
/// round fires nothing. Throws Error(RuleDivergence) past `max_rounds`.
FixedPointReport run_all(Store& store, const std::vector<Rule>& rules, const RunOptions& options = {});
FixedPointReport run_all(Store& store, const RunOptions& options = {});

enum class ViolationKind {
    CycleGranularity,
    DuringEnclosure,
    WeekdayMismatch,
    InvalidMonth,
    AllenCycle,
    UnderspecifiedBegin,
    PeriodChain,
};

std::string_view to_string(ViolationKind kind);

struct ConsistencyViolation {
    Term node;
    ViolationKind kind = ViolationKind::CycleGranularity;
    std::string detail;

    auto operator<=>(const ConsistencyViolation&) const = default;
    bool operator==(const ConsistencyViolation&) const = default;
};

/// Cycle/During granularity ordering and weekday agreement.
std::vector<ConsistencyViolation> check_cycle_consistency(const Store& store);

/// Every check, sorted: the cycle checks plus month range, before/after cycles,
/// unresolvable duration intervals and Period chains.
std::vector<ConsistencyViolation> check_consistency(const Store& store);

}  // namespace huto
