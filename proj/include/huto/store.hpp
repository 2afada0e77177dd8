#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "huto/term.hpp"

namespace huto {

struct Var {
    std::string name;
    bool operator==(const Var&) const = default;
};

inline Var var(std::string name) { return Var{std::move(name)}; }

/// A pattern position: either a concrete term or a named variable.
using Slot = std::variant<Term, Var>;

/// Variable assignment produced by matching.
class Binding {
public:
    const Term* find(std::string_view name) const;
    const Term& at(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    void bind(std::string name, Term value) { values_.insert_or_assign(std::move(name), std::move(value)); }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const std::map<std::string, Term, std::less<>>& values() const noexcept { return values_; }

    bool operator==(const Binding&) const = default;
    auto operator<=>(const Binding&) const = default;

private:
    std::map<std::string, Term, std::less<>> values_;
};

/// Triple pattern. An absent graph slot means "use the scope passed to match/solve".
struct Pattern {
    Slot subject;
    Slot predicate;
    Slot object;
    std::optional<Slot> graph;
};

/// One step of a property path: alternatives, optionally repeated one or more times.
struct PathStep {
    std::vector<Term> predicates;
    bool one_or_more = false;
};

/// Sequence path such as `exp+/(rdf:value|rdf:subject)`; repetition is bounded by max_depth.
struct PathPattern {
    Slot subject;
    std::vector<PathStep> steps;
    Slot object;
    std::size_t max_depth = 8;
};

struct Goal;

/// Succeeds (without binding anything) when its goals have no solution.
struct NotExists {
    std::vector<Goal> goals;
};

struct Filter {
    std::function<bool(const Binding&)> test;
};

struct Goal {
    std::variant<Pattern, PathPattern, NotExists, Filter> node;

    Goal(Pattern p) : node(std::move(p)) {}       // NOLINT(google-explicit-constructor)
    Goal(PathPattern p) : node(std::move(p)) {}   // NOLINT(google-explicit-constructor)
    Goal(NotExists n) : node(std::move(n)) {}     // NOLINT(google-explicit-constructor)
    Goal(Filter f) : node(std::move(f)) {}        // NOLINT(google-explicit-constructor)
};

/// Which graphs an un-annotated pattern reads from.
enum class GraphScope { Default, All };

/// In-memory triple store with named graphs and SPO/POS/OSP indexes per graph.
///
/// Mutation is single-writer; const member functions may run concurrently once
/// no writer is active.
class Store {
public:
    Store() = default;

    /// Returns true when the triple was not already present in its graph.
    bool insert(const Triple& t);
    bool insert(const Term& s, const Term& p, const Term& o) { return insert(Triple{s, p, o, std::nullopt}); }

    bool contains(const Triple& t) const;
    bool contains(const Term& s, const Term& p, const Term& o) const {
        return contains(Triple{s, p, o, std::nullopt});
    }

    Term fresh_blank();

    /// Statement node carrying rdf:subject/predicate/object arcs; idempotent.
    Term reify(const Term& s, const Term& p, const Term& o);

    /// Triples across all graphs.
    std::size_t size() const noexcept { return size_; }
    /// Triples in one graph; nullopt selects the default graph.
    std::size_t graph_count(const std::optional<Term>& graph) const;
    std::vector<Term> named_graphs() const;
    std::vector<Triple> triples() const;
    std::vector<Triple> triples_in(const std::optional<Term>& graph) const;

    std::vector<Binding> match(const Pattern& p, GraphScope scope = GraphScope::Default) const;
    std::vector<Binding> solve(std::span<const Goal> goals, GraphScope scope = GraphScope::Default,
                               const Binding& seed = {}) const;
    std::vector<Binding> solve(std::initializer_list<Goal> goals, GraphScope scope = GraphScope::Default,
                               const Binding& seed = {}) const {
        return solve(std::span<const Goal>(goals.begin(), goals.size()), scope, seed);
    }
    bool exists(std::span<const Goal> goals, GraphScope scope = GraphScope::Default,
                const Binding& seed = {}) const;

    // Default-graph conveniences used throughout the rule and query code.
    std::vector<Term> objects(const Term& s, const Term& p) const;
    std::vector<Term> subjects(const Term& p, const Term& o) const;
    std::optional<Term> object(const Term& s, const Term& p) const;
    std::vector<Triple> outgoing(const Term& s) const;
    std::vector<Triple> incoming(const Term& o, GraphScope scope = GraphScope::Default) const;
    /// All (subject, object) pairs of a predicate in the default graph.
    std::vector<std::pair<Term, Term>> pairs(const Term& p) const;

private:
    using Id = std::uint32_t;
    using Key = std::array<Id, 3>;
    struct GraphIndex {
        std::set<Key> spo;
        std::set<Key> pos;
        std::set<Key> osp;
    };

    std::optional<Id> lookup(const Term& t) const;
    Id intern(const Term& t);
    const Term& term(Id id) const { return terms_[id]; }
    const GraphIndex* graph(Id graph_id) const;

    template <class Fn>
    void scan(const GraphIndex& g, std::optional<Id> s, std::optional<Id> p, std::optional<Id> o, Fn&& fn) const;

    void match_pattern(const Pattern& p, const Binding& b, GraphScope scope,
                       const std::function<void(const Binding&)>& emit) const;
    void match_path(const PathPattern& p, const Binding& b, GraphScope scope,
                    const std::function<void(const Binding&)>& emit) const;
    bool eval(std::span<const Goal> goals, std::size_t index, const Binding& b, GraphScope scope,
              const std::function<bool(const Binding&)>& emit) const;
    std::vector<Id> graph_ids(GraphScope scope) const;

    std::vector<Term> terms_{Term()};  // id 0 is reserved for the default graph
    std::unordered_map<Term, Id> ids_;
    std::map<Id, GraphIndex> graphs_;
    std::size_t size_ = 0;
    std::uint64_t next_blank_ = 1;
};

/// Graph isomorphism up to a bijection between blank nodes (graph labels must match exactly).
bool isomorphic(std::span<const Triple> a, std::span<const Triple> b);

}  // namespace huto
