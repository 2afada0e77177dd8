#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "huto/store.hpp"
#include "huto/vocab.hpp"

namespace {

using namespace huto;

Term iri(const std::string& local) { return Term::iri("http://example.org/data/" + local); }

struct RandomGraphs {
    std::vector<Triple> triples;
    std::vector<Term> terms;
    std::vector<std::optional<Term>> graphs;
};

RandomGraphs random_triples(std::mt19937& rng, int n) {
    RandomGraphs r;
    for (int i = 0; i < 6; ++i) r.terms.push_back(iri("t" + std::to_string(i)));
    r.terms.push_back(Term::integer(3));
    r.terms.push_back(Term::blank(1));
    r.graphs = {std::nullopt, iri("g1"), iri("g2")};
    auto any = [&](const std::vector<Term>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    for (int i = 0; i < n; ++i) {
        Term subject = any(r.terms);
        while (subject.is_literal()) subject = any(r.terms);
        r.triples.push_back(Triple{subject, any({iri("p"), iri("q"), iri("r")}), any(r.terms),
                                   r.graphs[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]});
    }
    return r;
}

bool slot_fits(const Slot& s, const Term& t, Binding& b) {
    if (const auto* term = std::get_if<Term>(&s)) return *term == t;
    const auto& name = std::get<Var>(s).name;
    if (const Term* bound = b.find(name)) return *bound == t;
    b.bind(name, t);
    return true;
}

std::vector<Binding> naive_match(const std::vector<Triple>& all, const Pattern& p, GraphScope scope) {
    std::vector<Binding> out;
    for (const Triple& t : all) {
        if (scope == GraphScope::Default && !p.graph && t.graph) continue;
        Binding b;
        if (!slot_fits(p.subject, t.subject, b) || !slot_fits(p.predicate, t.predicate, b) ||
            !slot_fits(p.object, t.object, b)) {
            continue;
        }
        if (p.graph) {
            if (!t.graph || !slot_fits(*p.graph, *t.graph, b)) continue;
        }
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TEST(Store, InsertIsSetLike) {
    Store s;
    EXPECT_TRUE(s.insert(iri("a"), iri("p"), iri("b")));
    EXPECT_FALSE(s.insert(iri("a"), iri("p"), iri("b")));
    EXPECT_TRUE(s.insert(Triple{iri("a"), iri("p"), iri("b"), iri("g")}));
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.graph_count(std::nullopt), 1u);
    EXPECT_EQ(s.graph_count(iri("g")), 1u);
    EXPECT_EQ(s.named_graphs(), std::vector<Term>{iri("g")});
    EXPECT_TRUE(s.contains(Triple{iri("a"), iri("p"), iri("b"), iri("g")}));
    EXPECT_FALSE(s.contains(Triple{iri("b"), iri("p"), iri("a"), iri("g")}));
}

TEST(Store, FreshBlanksAreDistinct) {
    Store s;
    const Term a = s.fresh_blank();
    const Term b = s.fresh_blank();
    EXPECT_NE(a, b);
    EXPECT_TRUE(a.is_blank());
}

TEST(Store, ReifyReusesAnExistingStatementNode) {
    Store s;
    const Term n = s.reify(iri("Senghor"), iri("presidentOf"), iri("Senegal"));
    EXPECT_EQ(s.reify(iri("Senghor"), iri("presidentOf"), iri("Senegal")), n);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.object(n, vocab().rdf_object), iri("Senegal"));
}

TEST(Store, MatchAgreesWithANaiveScan) {
    std::mt19937 rng(17);
    for (int round = 0; round < 40; ++round) {
        const auto data = random_triples(rng, 120);
        Store s;
        for (const Triple& t : data.triples) s.insert(t);
        std::vector<Triple> stored = data.triples;
        std::sort(stored.begin(), stored.end());
        stored.erase(std::unique(stored.begin(), stored.end()), stored.end());
        ASSERT_EQ(s.size(), stored.size());

        std::vector<Slot> slots = {var("x"), var("y"), iri("p"), iri("t1"), Term::integer(3), Term::blank(1)};
        std::vector<std::optional<Slot>> graph_slots = {std::nullopt, Slot(var("g")), Slot(iri("g1")), Slot(var("x"))};
        for (const Slot& sub : slots) {
            for (const Slot& pred : {Slot(var("y")), Slot(iri("p")), Slot(iri("q"))}) {
                for (const Slot& obj : slots) {
                    for (const auto& g : graph_slots) {
                        for (GraphScope scope : {GraphScope::Default, GraphScope::All}) {
                            Pattern p{sub, pred, obj, g};
                            auto got = s.match(p, scope);
                            std::sort(got.begin(), got.end());
                            got.erase(std::unique(got.begin(), got.end()), got.end());
                            // With scope All and no graph slot, every graph is searched.
                            std::vector<Triple> pool = stored;
                            if (scope == GraphScope::All && !g) {
                                for (Triple& t : pool) t.graph.reset();
                            }
                            ASSERT_EQ(got, naive_match(pool, p, g ? GraphScope::All : scope));
                        }
                    }
                }
            }
        }
    }
}

TEST(Store, ConjunctionsJoinOnSharedVariables) {
    Store s;
    s.insert(iri("a"), iri("p"), iri("b"));
    s.insert(iri("b"), iri("p"), iri("c"));
    s.insert(iri("c"), iri("q"), iri("d"));
    const auto rows = s.solve({Pattern{var("x"), iri("p"), var("y")}, Pattern{var("y"), var("k"), var("z")}});
    ASSERT_EQ(rows.size(), 2u);
    std::set<std::pair<Term, Term>> pairs;
    for (const auto& r : rows) pairs.emplace(r.at("x"), r.at("z"));
    EXPECT_EQ(pairs, (std::set<std::pair<Term, Term>>{{iri("a"), iri("c")}, {iri("b"), iri("d")}}));
}

TEST(Store, NegationAndFilters) {
    Store s;
    s.insert(iri("a"), iri("p"), Term::integer(1));
    s.insert(iri("b"), iri("p"), Term::integer(5));
    s.insert(iri("b"), iri("flag"), iri("yes"));
    const auto unflagged = s.solve({Pattern{var("x"), iri("p"), var("v")},
                                    NotExists{{Pattern{var("x"), iri("flag"), var("any")}}}});
    ASSERT_EQ(unflagged.size(), 1u);
    EXPECT_EQ(unflagged[0].at("x"), iri("a"));
    const auto big = s.solve({Pattern{var("x"), iri("p"), var("v")},
                              Filter{[](const Binding& b) { return b.at("v").integer_value() > 2; }}});
    ASSERT_EQ(big.size(), 1u);
    EXPECT_EQ(big[0].at("x"), iri("b"));
    EXPECT_TRUE(s.exists(std::vector<Goal>{Pattern{iri("b"), iri("flag"), var("f")}}));
}

TEST(Store, PathsFollowOneOrMoreSteps) {
    Store s;
    for (int i = 0; i < 5; ++i) s.insert(iri("n" + std::to_string(i)), iri("exp"), iri("n" + std::to_string(i + 1)));
    s.insert(iri("n5"), iri("value"), iri("R"));
    PathPattern path{var("x"), {PathStep{{iri("exp")}, true}, PathStep{{iri("value"), iri("subject")}, false}}, iri("R")};
    const auto rows = s.solve({path});
    std::set<Term> xs;
    for (const auto& r : rows) xs.insert(r.at("x"));
    EXPECT_EQ(xs.size(), 5u);
    EXPECT_FALSE(xs.count(iri("n5")));

    PathPattern shallow = path;
    shallow.max_depth = 2;
    std::set<Term> near;
    for (const auto& r : s.solve({shallow})) near.insert(r.at("x"));
    EXPECT_EQ(near, (std::set<Term>{iri("n3"), iri("n4")}));
}

TEST(Store, PathsTerminateOnCycles) {
    Store s;
    s.insert(iri("a"), iri("exp"), iri("b"));
    s.insert(iri("b"), iri("exp"), iri("a"));
    PathPattern path{iri("a"), {PathStep{{iri("exp")}, true}}, var("y")};
    std::set<Term> ys;
    for (const auto& r : s.solve({path})) ys.insert(r.at("y"));
    EXPECT_EQ(ys, (std::set<Term>{iri("a"), iri("b")}));
}

TEST(Store, ConvenienceAccessors) {
    Store s;
    s.insert(iri("a"), iri("p"), iri("b"));
    s.insert(iri("a"), iri("p"), iri("c"));
    s.insert(Triple{iri("x"), iri("p"), iri("b"), iri("g")});
    EXPECT_EQ(s.objects(iri("a"), iri("p")).size(), 2u);
    EXPECT_EQ(s.subjects(iri("p"), iri("b")), std::vector<Term>{iri("a")});
    EXPECT_EQ(s.incoming(iri("b")).size(), 1u);
    EXPECT_EQ(s.incoming(iri("b"), GraphScope::All).size(), 2u);
    EXPECT_EQ(s.outgoing(iri("a")).size(), 2u);
    EXPECT_EQ(s.pairs(iri("p")).size(), 2u);
    EXPECT_EQ(s.object(iri("a"), iri("missing")), std::nullopt);
}

TEST(Isomorphism, BlankRenamingIsIgnored) {
    const Term p = iri("p");
    const std::vector<Triple> a = {{Term::blank(1), p, Term::blank(2), {}}, {Term::blank(2), p, iri("x"), {}}};
    const std::vector<Triple> b = {{Term::blank(9), p, Term::blank(7), {}}, {Term::blank(7), p, iri("x"), {}}};
    const std::vector<Triple> c = {{Term::blank(9), p, Term::blank(7), {}}, {Term::blank(9), p, iri("x"), {}}};
    EXPECT_TRUE(isomorphic(a, b));
    EXPECT_FALSE(isomorphic(a, c));
}

TEST(Isomorphism, SymmetricGraphsNeedBacktracking) {
    // Two disjoint blank cycles of length 3 versus one cycle of length 6.
    const Term p = iri("p");
    std::vector<Triple> two;
    std::vector<Triple> one;
    for (std::uint64_t i = 0; i < 3; ++i) {
        two.push_back({Term::blank(i), p, Term::blank((i + 1) % 3), {}});
        two.push_back({Term::blank(10 + i), p, Term::blank(10 + (i + 1) % 3), {}});
    }
    for (std::uint64_t i = 0; i < 6; ++i) one.push_back({Term::blank(i), p, Term::blank((i + 1) % 6), {}});
    EXPECT_FALSE(isomorphic(two, one));
    std::vector<Triple> shuffled = two;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_TRUE(isomorphic(two, shuffled));
}

TEST(Isomorphism, GraphNamesMatter) {
    const std::vector<Triple> a = {{iri("s"), iri("p"), iri("o"), iri("g")}};
    const std::vector<Triple> b = {{iri("s"), iri("p"), iri("o"), std::nullopt}};
    EXPECT_FALSE(isomorphic(a, b));
}

}  // namespace
