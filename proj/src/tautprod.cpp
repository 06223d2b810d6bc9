#include "tautchern/tautprod.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tautchern {

namespace {

DecoratedGraph strip(const DecoratedGraph& g) {
    DecoratedGraph out = g;
    for (auto& v : out.vertices) v.kappa.clear();
    for (auto& e : out.edges) {
        e.end[0].psi = 0;
        e.end[1].psi = 0;
    }
    std::fill(out.leg_psi.begin(), out.leg_psi.end(), 0);
    return out;
}

std::vector<DecoratedGraph> degenerations(const DecoratedGraph& g) {
    std::vector<DecoratedGraph> out;
    const int nv = static_cast<int>(g.vertices.size());
    for (int v = 0; v < nv; ++v) {
        // Loop at v.
        if (g.vertices[v].genus >= 1) {
            DecoratedGraph next = g;
            next.vertices[v].genus -= 1;
            GraphEdge loop;
            loop.end[0] = {v, 0};
            loop.end[1] = {v, 0};
            next.edges.push_back(loop);
            out.push_back(std::move(next));
        }
        // Split v: distribute genus and attachment slots over two vertices
        // joined by a fresh edge. Slots are v's legs and edge-ends.
        struct Slot {
            bool is_leg;
            int index;  // leg position or edge index
            int end;    // edge end
        };
        std::vector<Slot> slots;
        for (int li = 0; li < static_cast<int>(g.vertices[v].legs.size()); ++li)
            slots.push_back({true, li, 0});
        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei)
            for (int end = 0; end < 2; ++end)
                if (g.edges[ei].end[end].vertex == v) slots.push_back({false, ei, end});
        const std::size_t ns = slots.size();
        if (ns > 16) throw std::invalid_argument("stable_graphs: vertex valence too large");
        for (int g1 = 0; g1 <= g.vertices[v].genus; ++g1) {
            int g2 = g.vertices[v].genus - g1;
            for (std::size_t mask = 0; mask < (std::size_t(1) << ns); ++mask) {
                DecoratedGraph next = g;
                int w = nv;  // the new vertex
                GraphVertex fresh;
                fresh.genus = g2;
                next.vertices[v].genus = g1;
                std::vector<int> keep_legs, move_legs;
                for (std::size_t s = 0; s < ns; ++s) {
                    bool move = (mask >> s) & 1u;
                    if (slots[s].is_leg) {
                        int leg = g.vertices[v].legs[static_cast<std::size_t>(slots[s].index)];
                        (move ? move_legs : keep_legs).push_back(leg);
                    } else if (move) {
                        next.edges[static_cast<std::size_t>(slots[s].index)].end[slots[s].end].vertex = w;
                    }
                }
                next.vertices[v].legs = keep_legs;
                fresh.legs = move_legs;
                next.vertices.push_back(std::move(fresh));
                GraphEdge bridge;
                bridge.end[0] = {v, 0};
                bridge.end[1] = {w, 0};
                next.edges.push_back(bridge);
                // Quick stability screen before the full canonical pass.
                auto valence = [&](int vv) {
                    int val = static_cast<int>(next.vertices[vv].legs.size());
                    for (const auto& e : next.edges) {
                        if (e.end[0].vertex == vv) ++val;
                        if (e.end[1].vertex == vv) ++val;
                    }
                    return val;
                };
                if (2 * g1 - 2 + valence(v) <= 0 || 2 * g2 - 2 + valence(w) <= 0) continue;
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<DecoratedGraph> stable_graphs(const MarkedSpace& space, int max_edges) {
    struct CacheKey {
        int genus;
        std::vector<std::string> markings;
        auto operator<=>(const CacheKey&) const = default;
    };
    static std::mutex mutex;
    static std::map<CacheKey, std::pair<int, std::vector<DecoratedGraph>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[CacheKey{space.genus, space.markings}];
    if (slot.first >= max_edges + 1 && !slot.second.empty()) {
        std::vector<DecoratedGraph> out;
        for (const auto& g : slot.second)
            if (static_cast<int>(g.edges.size()) <= max_edges) out.push_back(g);
        return out;
    }

    std::map<std::string, DecoratedGraph> seen;
    DecoratedGraph triv;
    GraphVertex v0;
    v0.genus = space.genus;
    for (int i = 0; i < space.marking_count(); ++i) v0.legs.push_back(i);
    triv.vertices.push_back(std::move(v0));
    triv.leg_psi.assign(space.marking_count(), 0);
    CanonicalTerm base = canonicalize(space, triv);
    seen.emplace(base.canon.key, base.canon.graph);

    std::vector<DecoratedGraph> frontier{base.canon.graph};
    for (int depth = 1; depth <= max_edges; ++depth) {
        std::vector<DecoratedGraph> next_frontier;
        for (const auto& g : frontier) {
            for (auto& cand : degenerations(g)) {
                CanonicalTerm t = canonicalize(space, std::move(cand));
                if (t.zero) continue;
                if (seen.emplace(t.canon.key, t.canon.graph).second)
                    next_frontier.push_back(t.canon.graph);
            }
        }
        frontier = std::move(next_frontier);
    }

    std::vector<DecoratedGraph> all;
    all.reserve(seen.size());
    for (const auto& [key, g] : seen) all.push_back(g);
    std::sort(all.begin(), all.end(), [](const DecoratedGraph& a, const DecoratedGraph& b) {
        return a.edges.size() < b.edges.size();
    });
    slot = {max_edges + 1, all};
    return all;
}

namespace {

struct Contraction {
    DecoratedGraph graph;             // bare contracted graph
    std::vector<int> vertex_map;      // V(big) -> V(contracted)
    std::vector<int> kept_edge_index; // kept edge position in big -> edge index in contracted
};

Contraction contract(const MarkedSpace& space, const DecoratedGraph& g,
                     const std::vector<int>& keep) {
    const int nv = static_cast<int>(g.vertices.size());
    std::vector<char> keep_flag(g.edges.size(), 0);
    for (int e : keep) keep_flag[static_cast<std::size_t>(e)] = 1;
    std::vector<int> root(nv);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    int contracted_edges = 0;
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        if (keep_flag[ei]) continue;
        ++contracted_edges;
        int a = find(g.edges[ei].end[0].vertex);
        int b = find(g.edges[ei].end[1].vertex);
        if (a != b) root[a] = b;
    }
    // Independent cycles of the contracted subgraph raise the genus of
    // their component: edges minus (vertices - components), per component.
    std::vector<int> comp_vertices(nv, 0), comp_edges(nv, 0);
    for (int v = 0; v < nv; ++v) ++comp_vertices[find(v)];
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
        if (!keep_flag[ei]) ++comp_edges[find(g.edges[ei].end[0].vertex)];
    std::vector<int> extra_genus(nv, 0);
    for (int v = 0; v < nv; ++v)
        if (find(v) == v && comp_vertices[v] > 0)
            extra_genus[v] = comp_edges[v] - (comp_vertices[v] - 1);
    (void)contracted_edges;
    std::map<int, int> index_of;
    Contraction out;
    out.vertex_map.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        int r = find(v);
        if (!index_of.count(r)) {
            index_of[r] = static_cast<int>(out.graph.vertices.size());
            out.graph.vertices.push_back(GraphVertex{});
        }
    }
    for (int v = 0; v < nv; ++v) {
        int idx = index_of[find(v)];
        out.vertex_map[v] = idx;
        out.graph.vertices[idx].genus += g.vertices[v].genus;
        for (int leg : g.vertices[v].legs) out.graph.vertices[idx].legs.push_back(leg);
    }
    for (const auto& [r, idx] : index_of) out.graph.vertices[idx].genus += extra_genus[r];
    for (auto& v : out.graph.vertices) std::sort(v.legs.begin(), v.legs.end());
    out.graph.leg_psi.assign(space.marking_count(), 0);
    for (int e : keep) {
        GraphEdge ne;
        ne.end[0] = {out.vertex_map[g.edges[static_cast<std::size_t>(e)].end[0].vertex], 0};
        ne.end[1] = {out.vertex_map[g.edges[static_cast<std::size_t>(e)].end[1].vertex], 0};
        out.kept_edge_index.push_back(static_cast<int>(out.graph.edges.size()));
        out.graph.edges.push_back(ne);
    }
    return out;
}

struct Iso {
    std::vector<int> vertex;                    // V(source) -> V(target)
    std::vector<std::pair<int, int>> edge;      // source edge -> (target edge, end of target matching source end 0)
};

// All bare isomorphisms source -> target at the half-edge level.
std::vector<Iso> enumerate_isos(const DecoratedGraph& src, const DecoratedGraph& tgt) {
    std::vector<Iso> out;
    const int nv = static_cast<int>(src.vertices.size());
    if (nv != static_cast<int>(tgt.vertices.size()) || src.edges.size() != tgt.edges.size())
        return out;
    std::vector<int> sigma(nv, -1);
    std::vector<char> used(nv, 0);
    auto vertex_ok = [&](int s, int t) {
        return src.vertices[s].genus == tgt.vertices[t].genus &&
               src.vertices[s].legs == tgt.vertices[t].legs;
    };
    auto try_edges = [&]() {
        // Group source edges by their mapped unordered vertex pair and match
        // against the target's groups, enumerating every per-group bijection
        // and, for loops, both end orientations.
        std::map<std::pair<int, int>, std::vector<int>> sgroups, tgroups;
        for (int ei = 0; ei < static_cast<int>(src.edges.size()); ++ei) {
            int a = sigma[src.edges[static_cast<std::size_t>(ei)].end[0].vertex];
            int b = sigma[src.edges[static_cast<std::size_t>(ei)].end[1].vertex];
            sgroups[{std::min(a, b), std::max(a, b)}].push_back(ei);
        }
        for (int ei = 0; ei < static_cast<int>(tgt.edges.size()); ++ei) {
            int a = tgt.edges[static_cast<std::size_t>(ei)].end[0].vertex;
            int b = tgt.edges[static_cast<std::size_t>(ei)].end[1].vertex;
            tgroups[{std::min(a, b), std::max(a, b)}].push_back(ei);
        }
        if (sgroups.size() != tgroups.size()) return;
        for (const auto& [pair, list] : sgroups) {
            auto it = tgroups.find(pair);
            if (it == tgroups.end() || it->second.size() != list.size()) return;
        }
        // Backtrack over group assignments.
        std::vector<std::pair<int, int>> edge_map(src.edges.size(), {-1, -1});
        auto rec = [&](auto&& self, std::map<std::pair<int, int>, std::vector<int>>::iterator git)
            -> void {
            if (git == sgroups.end()) {
                Iso iso;
                iso.vertex = sigma;
                iso.edge = edge_map;
                out.push_back(std::move(iso));
                return;
            }
            const auto& spair = git->first;
            const auto& sl = git->second;
            std::vector<int> tl = tgroups[spair];
            std::sort(tl.begin(), tl.end());
            bool loop = spair.first == spair.second;
            do {
                std::vector<int> orient(sl.size(), 0);
                auto orient_rec = [&](auto&& oself, std::size_t oi) -> void {
                    if (oi == sl.size()) {
                        for (std::size_t i = 0; i < sl.size(); ++i) {
                            int send0_vertex = sigma[src.edges[static_cast<std::size_t>(sl[i])].end[0].vertex];
                            int tend0_vertex = tgt.edges[static_cast<std::size_t>(tl[i])].end[0].vertex;
                            int match_end;
                            if (loop)
                                match_end = orient[i];
                            else
                                match_end = (send0_vertex == tend0_vertex) ? 0 : 1;
                            edge_map[static_cast<std::size_t>(sl[i])] = {tl[i], match_end};
                        }
                        auto next = git;
                        ++next;
                        self(self, next);
                        return;
                    }
                    orient[oi] = 0;
                    oself(oself, oi + 1);
                    if (loop) {
                        orient[oi] = 1;
                        oself(oself, oi + 1);
                    }
                };
                orient_rec(orient_rec, 0);
            } while (std::next_permutation(tl.begin(), tl.end()));
        };
        rec(rec, sgroups.begin());
    };
    auto assign = [&](auto&& self, int s) -> void {
        if (s == nv) {
            try_edges();
            return;
        }
        for (int t = 0; t < nv; ++t) {
            if (used[t] || !vertex_ok(s, t)) continue;
            sigma[s] = t;
            used[t] = 1;
            self(self, s + 1);
            used[t] = 0;
            sigma[s] = -1;
        }
    };
    assign(assign, 0);
    return out;
}

struct Structure {
    std::vector<int> edges;                     // selected edge indices in the big graph
    std::vector<std::pair<int, int>> to_target; // per selected edge: (target edge, target end matched by end 0)
    std::vector<int> vertex_to_target;          // V(big) -> V(target)
};

std::vector<Structure> enumerate_structures(const MarkedSpace& space, const DecoratedGraph& big,
                                            const DecoratedGraph& target_bare) {
    std::vector<Structure> out;
    const int ne = static_cast<int>(big.edges.size());
    const int nt = static_cast<int>(target_bare.edges.size());
    if (nt > ne) return out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == nt) {
            Contraction c = contract(space, big, pick);
            for (const auto& iso : enumerate_isos(c.graph, target_bare)) {
                Structure st;
                st.edges = pick;
                st.vertex_to_target.resize(big.vertices.size());
                for (std::size_t v = 0; v < big.vertices.size(); ++v)
                    st.vertex_to_target[v] = iso.vertex[static_cast<std::size_t>(c.vertex_map[v])];
                for (std::size_t i = 0; i < pick.size(); ++i)
                    st.to_target.push_back(iso.edge[static_cast<std::size_t>(c.kept_edge_index[i])]);
                out.push_back(std::move(st));
            }
            return;
        }
        for (int e = from; e < ne; ++e) {
            pick.push_back(e);
            self(self, e + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Decoration transport: add the generator's psi decorations onto the big
// graph through the structure; kappa decorations branch over the fiber.
void apply_structures(const DecoratedGraph& big,
                      const TautClass::Term& ta, const Structure& sa,
                      const TautClass::Term& tb, const Structure& sb, const Rational& weight,
                      TautClass& acc) {
    DecoratedGraph base = big;
    for (std::size_t i = 0; i < base.leg_psi.size(); ++i)
        base.leg_psi[i] = ta.graph.leg_psi[i] + tb.graph.leg_psi[i];

    auto pull_psi = [&](const TautClass::Term& term, const Structure& st) {
        for (std::size_t i = 0; i < st.edges.size(); ++i) {
            const auto& [tedge, tend_of_end0] = st.to_target[i];
            const GraphEdge& te = term.graph.edges[static_cast<std::size_t>(tedge)];
            GraphEdge& be = base.edges[static_cast<std::size_t>(st.edges[i])];
            be.end[0].psi += te.end[tend_of_end0].psi;
            be.end[1].psi += te.end[1 - tend_of_end0].psi;
        }
    };
    pull_psi(ta, sa);
    pull_psi(tb, sb);

    // Branch over kappa placements and excess psi choices.
    std::vector<std::pair<DecoratedGraph, Rational>> branches{{base, weight}};
    auto pull_kappa = [&](const TautClass::Term& term, const Structure& st) {
        for (int tv = 0; tv < static_cast<int>(term.graph.vertices.size()); ++tv) {
            for (int kap : term.graph.vertices[static_cast<std::size_t>(tv)].kappa) {
                std::vector<std::pair<DecoratedGraph, Rational>> next;
                for (const auto& [g, c] : branches)
                    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
                        if (st.vertex_to_target[static_cast<std::size_t>(v)] != tv) continue;
                        DecoratedGraph gg = g;
                        gg.vertices[static_cast<std::size_t>(v)].kappa.push_back(kap);
                        next.emplace_back(std::move(gg), c);
                    }
                branches = std::move(next);
            }
        }
    };
    pull_kappa(ta, sa);
    pull_kappa(tb, sb);

    std::set<int> shared(sa.edges.begin(), sa.edges.end());
    for (int e : sb.edges) {
        if (!shared.count(e)) continue;
        std::vector<std::pair<DecoratedGraph, Rational>> next;
        for (const auto& [g, c] : branches)
            for (int end = 0; end < 2; ++end) {
                DecoratedGraph gg = g;
                gg.edges[static_cast<std::size_t>(e)].end[end].psi += 1;
                next.emplace_back(std::move(gg), -c);
            }
        branches = std::move(next);
    }
    for (const auto& [g, c] : branches) acc.add(g, c);
}

}  // namespace

TautClass gp_product(const TautClass& x, const TautClass& y) {
    if (!(x.space() == y.space())) throw std::invalid_argument("gp_product: mismatched spaces");
    const MarkedSpace& space = x.space();
    TautClass out(space);
    for (const auto& [xkey, tx] : x.terms()) {
        for (const auto& [ykey, ty] : y.terms()) {
            int total = tx.graph.codim() + ty.graph.codim();
            if (total > space.dimension()) continue;
            int ea = static_cast<int>(tx.graph.edges.size());
            int eb = static_cast<int>(ty.graph.edges.size());
            Rational weight = tx.coeff * ty.coeff /
                              Rational(static_cast<long long>(tx.aut_order * ty.aut_order));
            DecoratedGraph bare_a = strip(tx.graph);
            DecoratedGraph bare_b = strip(ty.graph);
            for (const auto& big : stable_graphs(space, ea + eb)) {
                int nbig = static_cast<int>(big.edges.size());
                if (nbig < std::max(ea, eb) || nbig > ea + eb) continue;
                auto stra = enumerate_structures(space, big, bare_a);
                if (stra.empty()) continue;
                auto strb = enumerate_structures(space, big, bare_b);
                if (strb.empty()) continue;
                for (const auto& sa : stra)
                    for (const auto& sb : strb) {
                        // Genericity: jointly the structures use every edge.
                        std::set<int> cover(sa.edges.begin(), sa.edges.end());
                        cover.insert(sb.edges.begin(), sb.edges.end());
                        if (static_cast<int>(cover.size()) != nbig) continue;
                        apply_structures(big, tx, sa, ty, sb, weight, out);
                    }
            }
        }
    }
    return out;
}

}  // namespace tautchern
