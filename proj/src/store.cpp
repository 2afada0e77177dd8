#include "huto/store.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

#include "huto/error.hpp"
#include "huto/vocab.hpp"

namespace huto {

const Term* Binding::find(std::string_view name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
}

const Term& Binding::at(std::string_view name) const {
    if (const Term* t = find(name)) return *t;
    throw Error(ErrorCode::InvalidArgument, "unbound variable ?" + std::string(name));
}

std::optional<Store::Id> Store::lookup(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

Store::Id Store::intern(const Term& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    const Id id = static_cast<Id>(terms_.size());
    terms_.push_back(t);
    ids_.emplace(t, id);
    return id;
}

const Store::GraphIndex* Store::graph(Id graph_id) const {
    auto it = graphs_.find(graph_id);
    return it == graphs_.end() ? nullptr : &it->second;
}

bool Store::insert(const Triple& t) {
    if (t.subject.is_literal()) {
        throw Error(ErrorCode::MalformedTriple, "literal in subject position: " + to_string(t.subject));
    }
    if (!t.predicate.is_iri()) {
        throw Error(ErrorCode::MalformedTriple, "predicate must be an IRI: " + to_string(t.predicate));
    }
    if (t.graph && !t.graph->is_iri()) {
        throw Error(ErrorCode::MalformedTriple, "graph name must be an IRI: " + to_string(*t.graph));
    }
    for (const Term* x : {&t.subject, &t.object}) {
        if (x->is_blank()) next_blank_ = std::max(next_blank_, x->blank_id() + 1);
    }
    const Id g = t.graph ? intern(*t.graph) : 0;
    const Id s = intern(t.subject);
    const Id p = intern(t.predicate);
    const Id o = intern(t.object);
    GraphIndex& idx = graphs_[g];
    if (!idx.spo.insert({s, p, o}).second) return false;
    idx.pos.insert({p, o, s});
    idx.osp.insert({o, s, p});
    ++size_;
    return true;
}

bool Store::contains(const Triple& t) const {
    const auto s = lookup(t.subject);
    const auto p = lookup(t.predicate);
    const auto o = lookup(t.object);
    if (!s || !p || !o) return false;
    Id g = 0;
    if (t.graph) {
        const auto gid = lookup(*t.graph);
        if (!gid) return false;
        g = *gid;
    }
    const GraphIndex* idx = graph(g);
    return idx && idx->spo.count({*s, *p, *o}) > 0;
}

Term Store::fresh_blank() { return Term::blank(next_blank_++); }

Term Store::reify(const Term& s, const Term& p, const Term& o) {
    const auto& v = vocab();
    for (const Term& candidate : subjects(v.rdf_subject, s)) {
        if (contains(candidate, v.rdf_predicate, p) && contains(candidate, v.rdf_object, o)) {
            return candidate;
        }
    }
    const Term node = fresh_blank();
    insert(node, v.rdf_subject, s);
    insert(node, v.rdf_predicate, p);
    insert(node, v.rdf_object, o);
    return node;
}

std::size_t Store::graph_count(const std::optional<Term>& g) const {
    Id gid = 0;
    if (g) {
        const auto found = lookup(*g);
        if (!found) return 0;
        gid = *found;
    }
    const GraphIndex* idx = graph(gid);
    return idx ? idx->spo.size() : 0;
}

std::vector<Term> Store::named_graphs() const {
    std::vector<Term> out;
    for (const auto& [gid, idx] : graphs_) {
        if (gid != 0 && !idx.spo.empty()) out.push_back(term(gid));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Triple> Store::triples_in(const std::optional<Term>& g) const {
    std::vector<Triple> out;
    Id gid = 0;
    if (g) {
        const auto found = lookup(*g);
        if (!found) return out;
        gid = *found;
    }
    const GraphIndex* idx = graph(gid);
    if (!idx) return out;
    out.reserve(idx->spo.size());
    for (const Key& k : idx->spo) out.push_back(Triple{term(k[0]), term(k[1]), term(k[2]), g});
    return out;
}

std::vector<Triple> Store::triples() const {
    std::vector<Triple> out = triples_in(std::nullopt);
    for (const Term& g : named_graphs()) {
        auto part = triples_in(g);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

template <class Fn>
void Store::scan(const GraphIndex& g, std::optional<Id> s, std::optional<Id> p, std::optional<Id> o,
                 Fn&& fn) const {
    constexpr Id kMax = std::numeric_limits<Id>::max();
    // Each index is a sorted set; iterate the range sharing the bound prefix.
    auto range = [&](const std::set<Key>& index, Key lo, Key hi, auto&& to_spo) {
        for (auto it = index.lower_bound(lo); it != index.end() && *it <= hi; ++it) {
            const Key spo = to_spo(*it);
            if (s && spo[0] != *s) continue;
            if (p && spo[1] != *p) continue;
            if (o && spo[2] != *o) continue;
            if (!fn(spo)) return;
        }
    };
    auto id_spo = [](const Key& k) { return k; };
    auto from_pos = [](const Key& k) { return Key{k[2], k[0], k[1]}; };
    auto from_osp = [](const Key& k) { return Key{k[1], k[2], k[0]}; };
    if (s && p) {
        range(g.spo, {*s, *p, o.value_or(0)}, {*s, *p, o.value_or(kMax)}, id_spo);
    } else if (s && o) {
        range(g.osp, {*o, *s, 0}, {*o, *s, kMax}, from_osp);
    } else if (s) {
        range(g.spo, {*s, 0, 0}, {*s, kMax, kMax}, id_spo);
    } else if (p) {
        range(g.pos, {*p, o.value_or(0), 0}, {*p, o.value_or(kMax), kMax}, from_pos);
    } else if (o) {
        range(g.osp, {*o, 0, 0}, {*o, kMax, kMax}, from_osp);
    } else {
        range(g.spo, {0, 0, 0}, {kMax, kMax, kMax}, id_spo);
    }
}

std::vector<Store::Id> Store::graph_ids(GraphScope scope) const {
    std::vector<Id> out;
    if (scope == GraphScope::Default) {
        out.push_back(0);
    } else {
        for (const auto& entry : graphs_) out.push_back(entry.first);
    }
    return out;
}

namespace {

// Resolves a slot against a binding: the bound term, or the variable name if free.
std::variant<Term, std::string> resolve(const Slot& slot, const Binding& b) {
    if (const auto* t = std::get_if<Term>(&slot)) return *t;
    const auto& name = std::get<Var>(slot).name;
    if (const Term* bound = b.find(name)) return *bound;
    return name;
}

}  // namespace

void Store::match_pattern(const Pattern& pat, const Binding& b, GraphScope scope,
                          const std::function<void(const Binding&)>& emit) const {
    const auto rs = resolve(pat.subject, b);
    const auto rp = resolve(pat.predicate, b);
    const auto ro = resolve(pat.object, b);

    std::optional<Id> ids[3];
    const std::string* names[3] = {nullptr, nullptr, nullptr};
    const std::variant<Term, std::string>* slots[3] = {&rs, &rp, &ro};
    for (int i = 0; i < 3; ++i) {
        if (const auto* t = std::get_if<Term>(slots[i])) {
            ids[i] = lookup(*t);
            if (!ids[i]) return;
        } else {
            names[i] = &std::get<std::string>(*slots[i]);
        }
    }

    std::vector<std::pair<Id, std::optional<Term>>> targets;  // graph id, term to bind
    std::string graph_var;
    if (!pat.graph) {
        for (Id g : graph_ids(scope)) targets.emplace_back(g, std::nullopt);
    } else {
        const auto rg = resolve(*pat.graph, b);
        if (const auto* t = std::get_if<Term>(&rg)) {
            const auto gid = lookup(*t);
            if (!gid) return;
            targets.emplace_back(*gid, std::nullopt);
        } else {
            graph_var = std::get<std::string>(rg);
            for (const auto& [gid, idx] : graphs_) {
                if (gid != 0) targets.emplace_back(gid, term(gid));
            }
        }
    }

    for (const auto& [gid, graph_term] : targets) {
        const GraphIndex* idx = graph(gid);
        if (!idx) continue;
        scan(*idx, ids[0], ids[1], ids[2], [&](const Key& spo) {
            Binding out = b;
            for (int i = 0; i < 3; ++i) {
                if (!names[i]) continue;
                const Term& value = term(spo[i]);
                if (const Term* existing = out.find(*names[i])) {
                    // Same variable used twice in one pattern.
                    if (*existing != value) return true;
                } else {
                    out.bind(*names[i], value);
                }
            }
            if (graph_term) {
                if (const Term* existing = out.find(graph_var)) {
                    if (*existing != *graph_term) return true;
                } else {
                    out.bind(graph_var, *graph_term);
                }
            }
            emit(out);
            return true;
        });
    }
}

void Store::match_path(const PathPattern& path, const Binding& b, GraphScope scope,
                       const std::function<void(const Binding&)>& emit) const {
    const auto rs = resolve(path.subject, b);
    const auto ro = resolve(path.object, b);
    const auto gids = graph_ids(scope);

    auto step_once = [&](Id node, const PathStep& step, std::vector<Id>& out) {
        for (const Term& pred : step.predicates) {
            const auto pid = lookup(pred);
            if (!pid) continue;
            for (Id g : gids) {
                const GraphIndex* idx = graph(g);
                if (!idx) continue;
                scan(*idx, node, *pid, std::nullopt, [&](const Key& spo) {
                    out.push_back(spo[2]);
                    return true;
                });
            }
        }
    };

    std::vector<Id> starts;
    if (const auto* t = std::get_if<Term>(&rs)) {
        const auto id = lookup(*t);
        if (!id) return;
        starts.push_back(*id);
    } else if (!path.steps.empty()) {
        std::set<Id> seen;
        for (const Term& pred : path.steps.front().predicates) {
            const auto pid = lookup(pred);
            if (!pid) continue;
            for (Id g : gids) {
                const GraphIndex* idx = graph(g);
                if (!idx) continue;
                scan(*idx, std::nullopt, *pid, std::nullopt, [&](const Key& spo) {
                    seen.insert(spo[0]);
                    return true;
                });
            }
        }
        starts.assign(seen.begin(), seen.end());
    }

    for (Id start : starts) {
        std::set<Id> frontier{start};
        for (const PathStep& step : path.steps) {
            std::set<Id> next;
            std::vector<Id> buffer;
            if (!step.one_or_more) {
                for (Id n : frontier) step_once(n, step, buffer);
                next.insert(buffer.begin(), buffer.end());
            } else {
                std::set<Id> level = frontier;
                for (std::size_t depth = 0; depth < path.max_depth && !level.empty(); ++depth) {
                    buffer.clear();
                    for (Id n : level) step_once(n, step, buffer);
                    std::set<Id> fresh;
                    for (Id x : buffer) {
                        if (next.insert(x).second) fresh.insert(x);
                    }
                    level = std::move(fresh);
                }
            }
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        for (Id end : frontier) {
            Binding out = b;
            if (const auto* name = std::get_if<std::string>(&rs)) out.bind(*name, term(start));
            if (const auto* t = std::get_if<Term>(&ro)) {
                if (*t != term(end)) continue;
            } else {
                const auto& name = std::get<std::string>(ro);
                if (const Term* existing = out.find(name)) {
                    if (*existing != term(end)) continue;
                } else {
                    out.bind(name, term(end));
                }
            }
            emit(out);
        }
    }
}

bool Store::eval(std::span<const Goal> goals, std::size_t index, const Binding& b, GraphScope scope,
                 const std::function<bool(const Binding&)>& emit) const {
    if (index == goals.size()) return emit(b);
    bool keep_going = true;
    const Goal& goal = goals[index];
    auto next = [&](const Binding& extended) {
        if (keep_going) keep_going = eval(goals, index + 1, extended, scope, emit);
    };
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Pattern>) {
                match_pattern(g, b, scope, next);
            } else if constexpr (std::is_same_v<T, PathPattern>) {
                match_path(g, b, scope, next);
            } else if constexpr (std::is_same_v<T, NotExists>) {
                if (!exists(g.goals, scope, b)) next(b);
            } else {
                if (g.test(b)) next(b);
            }
        },
        goal.node);
    return keep_going;
}

std::vector<Binding> Store::match(const Pattern& p, GraphScope scope) const {
    std::vector<Binding> out;
    match_pattern(p, Binding{}, scope, [&](const Binding& b) { out.push_back(b); });
    return out;
}

std::vector<Binding> Store::solve(std::span<const Goal> goals, GraphScope scope, const Binding& seed) const {
    std::vector<Binding> out;
    eval(goals, 0, seed, scope, [&](const Binding& b) {
        out.push_back(b);
        return true;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Store::exists(std::span<const Goal> goals, GraphScope scope, const Binding& seed) const {
    bool found = false;
    eval(goals, 0, seed, scope, [&](const Binding&) {
        found = true;
        return false;
    });
    return found;
}

std::vector<Term> Store::objects(const Term& s, const Term& p) const {
    std::vector<Term> out;
    const auto sid = lookup(s);
    const auto pid = lookup(p);
    const GraphIndex* idx = graph(0);
    if (!sid || !pid || !idx) return out;
    scan(*idx, sid, pid, std::nullopt, [&](const Key& k) {
        out.push_back(term(k[2]));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Term> Store::subjects(const Term& p, const Term& o) const {
    std::vector<Term> out;
    const auto pid = lookup(p);
    const auto oid = lookup(o);
    const GraphIndex* idx = graph(0);
    if (!pid || !oid || !idx) return out;
    scan(*idx, std::nullopt, pid, oid, [&](const Key& k) {
        out.push_back(term(k[0]));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Term> Store::object(const Term& s, const Term& p) const {
    auto all = objects(s, p);
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::vector<Triple> Store::outgoing(const Term& s) const {
    std::vector<Triple> out;
    const auto sid = lookup(s);
    const GraphIndex* idx = graph(0);
    if (!sid || !idx) return out;
    scan(*idx, sid, std::nullopt, std::nullopt, [&](const Key& k) {
        out.push_back(Triple{term(k[0]), term(k[1]), term(k[2]), std::nullopt});
        return true;
    });
    return out;
}

std::vector<Triple> Store::incoming(const Term& o, GraphScope scope) const {
    std::vector<Triple> out;
    const auto oid = lookup(o);
    if (!oid) return out;
    for (Id g : graph_ids(scope)) {
        const GraphIndex* idx = graph(g);
        if (!idx) continue;
        std::optional<Term> gterm;
        if (g != 0) gterm = term(g);
        scan(*idx, std::nullopt, std::nullopt, oid, [&](const Key& k) {
            out.push_back(Triple{term(k[0]), term(k[1]), term(k[2]), gterm});
            return true;
        });
    }
    return out;
}

std::vector<std::pair<Term, Term>> Store::pairs(const Term& p) const {
    std::vector<std::pair<Term, Term>> out;
    const auto pid = lookup(p);
    const GraphIndex* idx = graph(0);
    if (!pid || !idx) return out;
    scan(*idx, std::nullopt, pid, std::nullopt, [&](const Key& k) {
        out.emplace_back(term(k[0]), term(k[2]));
        return true;
    });
    return out;
}

}  // namespace huto
