#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "huto/store.hpp"

namespace huto {

namespace {

using Color = std::uint64_t;

Color mix(Color h, Color v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    return h ^ (h >> 33);
}

Color hash_term(const Term& t) { return mix(0x51ed27, t.hash()); }

Color hash_graph(const std::optional<Term>& g) { return g ? hash_term(*g) : 0x6a09e667ULL; }

/// Triples with blank nodes replaced by dense indices.
struct BlankGraph {
    std::vector<Triple> triples;
    std::vector<Term> blanks;
    std::unordered_map<Term, std::size_t> index;
    std::vector<std::vector<std::size_t>> incident;  // triple indices per blank

    explicit BlankGraph(std::vector<Triple> ts) : triples(std::move(ts)) {
        for (std::size_t i = 0; i < triples.size(); ++i) {
            for (const Term* x : {&triples[i].subject, &triples[i].object}) {
                if (!x->is_blank()) continue;
                auto [it, fresh] = index.emplace(*x, blanks.size());
                if (fresh) {
                    blanks.push_back(*x);
                    incident.emplace_back();
                }
                auto& inc = incident[it->second];
                if (inc.empty() || inc.back() != i) inc.push_back(i);
            }
        }
    }

    std::vector<Color> refine(const std::vector<Color>& colors) const {
        std::vector<Color> out(blanks.size());
        for (std::size_t b = 0; b < blanks.size(); ++b) {
            std::vector<Color> signature;
            for (std::size_t ti : incident[b]) {
                const Triple& t = triples[ti];
                auto endpoint = [&](const Term& x) -> Color {
                    if (!x.is_blank()) return hash_term(x);
                    const std::size_t j = index.at(x);
                    return j == b ? 0x5e1fULL : mix(0xb1a4cULL, colors[j]);
                };
                const Color base = mix(hash_term(t.predicate), hash_graph(t.graph));
                if (t.subject.is_blank() && index.at(t.subject) == b) {
                    signature.push_back(mix(mix(base, 1), endpoint(t.object)));
                }
                if (t.object.is_blank() && index.at(t.object) == b) {
                    signature.push_back(mix(mix(base, 2), endpoint(t.subject)));
                }
            }
            std::sort(signature.begin(), signature.end());
            Color h = mix(0xc01012ULL, colors[b]);
            for (Color c : signature) h = mix(h, c);
            out[b] = h;
        }
        return out;
    }
};

std::size_t distinct(const std::vector<Color>& a, const std::vector<Color>& b) {
    std::set<Color> all(a.begin(), a.end());
    all.insert(b.begin(), b.end());
    return all.size();
}

void refine_to_fixpoint(const BlankGraph& ga, const BlankGraph& gb, std::vector<Color>& ca,
                        std::vector<Color>& cb) {
    std::size_t classes = distinct(ca, cb);
    for (;;) {
        auto na = ga.refine(ca);
        auto nb = gb.refine(cb);
        const std::size_t next = distinct(na, nb);
        ca = std::move(na);
        cb = std::move(nb);
        if (next <= classes) return;
        classes = next;
    }
}

bool same_color_multiset(std::vector<Color> a, std::vector<Color> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

bool verify(const BlankGraph& ga, const BlankGraph& gb, const std::vector<Color>& ca,
            const std::vector<Color>& cb) {
    std::unordered_map<Color, std::size_t> by_color;
    for (std::size_t j = 0; j < cb.size(); ++j) by_color[cb[j]] = j;
    auto map_term = [&](const Term& t) {
        if (!t.is_blank()) return t;
        return gb.blanks[by_color.at(ca[ga.index.at(t)])];
    };
    std::set<Triple> mapped;
    for (const Triple& t : ga.triples) {
        mapped.insert(Triple{map_term(t.subject), t.predicate, map_term(t.object), t.graph});
    }
    std::set<Triple> target(gb.triples.begin(), gb.triples.end());
    return mapped == target;
}

bool match_blanks(const BlankGraph& ga, const BlankGraph& gb, std::vector<Color> ca, std::vector<Color> cb,
            Color salt) {
    refine_to_fixpoint(ga, gb, ca, cb);
    if (!same_color_multiset(ca, cb)) return false;

    std::unordered_map<Color, std::size_t> class_size;
    for (Color c : ca) ++class_size[c];
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (class_size[ca[i]] > 1 && (!pick || class_size[ca[i]] < class_size[ca[*pick]])) pick = i;
    }
    if (!pick) return verify(ga, gb, ca, cb);

    // Individualize one blank of the smallest ambiguous class against each candidate.
    const Color target = ca[*pick];
    for (std::size_t j = 0; j < cb.size(); ++j) {
        if (cb[j] != target) continue;
        auto na = ca;
        auto nb = cb;
        na[*pick] = mix(target, salt);
        nb[j] = mix(target, salt);
        if (match_blanks(ga, gb, std::move(na), std::move(nb), mix(salt, 0x1234567ULL))) return true;
    }
    return false;
}

std::vector<Triple> dedupe(std::span<const Triple> ts) {
    std::set<Triple> s(ts.begin(), ts.end());
    return {s.begin(), s.end()};
}

}  // namespace

bool isomorphic(std::span<const Triple> a, std::span<const Triple> b) {
    auto ta = dedupe(a);
    auto tb = dedupe(b);
    if (ta.size() != tb.size()) return false;

    auto ground = [](const std::vector<Triple>& ts) {
        std::vector<Triple> out;
        for (const auto& t : ts) {
            if (!t.subject.is_blank() && !t.object.is_blank()) out.push_back(t);
        }
        return out;
    };
    if (ground(ta) != ground(tb)) return false;

    BlankGraph ga(std::move(ta));
    BlankGraph gb(std::move(tb));
    if (ga.blanks.size() != gb.blanks.size()) return false;
    if (ga.blanks.empty()) return true;

    std::vector<Color> ca(ga.blanks.size(), 1);
    std::vector<Color> cb(gb.blanks.size(), 1);
    return match_blanks(ga, gb, std::move(ca), std::move(cb), 0x2545f4914f6cdd1dULL);
}

}  // namespace huto
