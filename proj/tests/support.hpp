#pragma once

#include <ostream>

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "huto/model.hpp"
#include "huto/query.hpp"
#include "huto/store.hpp"

namespace huto::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

/// Every file in the fixture directory, sorted.
std::vector<std::string> all_fixtures();

/// Parses a fixture into `store`; returns the number of triples added.
std::size_t load_fixture(Store& store, const std::string& name);

/// A store of HuTO annotations, Allen links and plain facts with at most `max_triples` triples.
Store random_store(std::mt19937& rng, std::size_t max_triples);

/// Random DAG over `n` data IRIs as `before` edges (i before j only for i < j).
std::vector<std::pair<int, int>> random_dag(std::mt19937& rng, int n, double density);

Term node_iri(int i);

/// During or Cycle nodes without incoming arcs in the store as parsed.
std::vector<Term> unreferenced_roots(const Store& store);

/// Day-coverage oracle: expands lifted annotations day by day with std::chrono.
namespace oracle {

using Day = std::chrono::sys_days;

enum class Cover { No, Yes, Unknown };

struct Match {
    AnnotationTarget target;
    MatchKind kind;
    Term root;

    auto operator<=>(const Match&) const = default;
};

inline void PrintTo(const Match& m, std::ostream* os) {
    *os << to_string(m.target) << " " << static_cast<int>(m.kind) << " " << to_string(m.root);
}

class Expander {
public:
    Expander(const Store& store, std::optional<PartialDate> today);

    /// Matches on `day`, and the (target, root) pairs whose coverage is unknown that day.
    std::pair<std::set<Match>, std::set<std::pair<AnnotationTarget, Term>>> on(Day day) const;

private:
    struct Root {
        Term node;
        TemporalAnnotation annotation;
        MatchKind kind;
        std::optional<Weekday> every_weekday;
    };

    Cover covers(const Interval& i, Day day, const Root& root) const;
    Cover covers(const Cycle& c, Day day, const Interval* enclosing, const Root& root) const;
    std::optional<PartialDate> resolve(const PartialDate& d) const;

    const Store& store_;
    std::optional<PartialDate> today_;
    std::vector<Root> roots_;
};

Day to_day(std::int64_t y, int m, int d);
DateQuery query_for(Day day);

}  // namespace oracle

}  // namespace huto::testing
