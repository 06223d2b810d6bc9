#include "tautchern/strata.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace tautchern {

namespace {

int vertex_valence(const DecoratedGraph& g, int v) {
    int val = static_cast<int>(g.vertices[v].legs.size());
    for (const auto& e : g.edges) {
        if (e.end[0].vertex == v) ++val;
        if (e.end[1].vertex == v) ++val;
    }
    return val;
}

int vertex_decoration_degree(const DecoratedGraph& g, int v) {
    int deg = 0;
    for (int k : g.vertices[v].kappa) deg += k;
    for (const auto& e : g.edges)
        for (const auto& h : e.end)
            if (h.vertex == v) deg += h.psi;
    for (int leg : g.vertices[v].legs) deg += g.leg_psi[leg];
    return deg;
}

void validate_graph(const MarkedSpace& space, const DecoratedGraph& g) {
    const int nv = static_cast<int>(g.vertices.size());
    if (nv == 0) throw std::invalid_argument("graph: no vertices");
    if (static_cast<int>(g.leg_psi.size()) != space.marking_count())
        throw std::invalid_argument("graph: leg_psi size mismatch");
    std::vector<int> seen(space.marking_count(), 0);
    int genus_sum = 0;
    for (const auto& v : g.vertices) {
        if (v.genus < 0) throw std::invalid_argument("graph: negative vertex genus");
        genus_sum += v.genus;
        for (int leg : v.legs) {
            if (leg < 0 || leg >= space.marking_count())
                throw std::invalid_argument("graph: leg index out of range");
            ++seen[leg];
        }
        for (int k : v.kappa)
            if (k < 0) throw std::invalid_argument("graph: negative kappa index");
    }
    for (int c : seen)
        if (c != 1) throw std::invalid_argument("graph: legs do not partition the markings");
    for (const auto& e : g.edges)
        for (const auto& h : e.end) {
            if (h.vertex < 0 || h.vertex >= nv)
                throw std::invalid_argument("graph: edge endpoint out of range");
            if (h.psi < 0) throw std::invalid_argument("graph: negative psi exponent");
        }
    for (int p : g.leg_psi)
        if (p < 0) throw std::invalid_argument("graph: negative leg psi exponent");
    // Connectivity.
    std::vector<int> comp(nv, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
            int a = e.end[0].vertex, b = e.end[1].vertex;
            if (a == v && comp[b] < 0) { comp[b] = 0; stack.push_back(b); }
            if (b == v && comp[a] < 0) { comp[a] = 0; stack.push_back(a); }
        }
    }
    for (int c : comp)
        if (c < 0) throw std::invalid_argument("graph: not connected");
    int betti = static_cast<int>(g.edges.size()) - nv + 1;
    if (genus_sum + betti != space.genus)
        throw std::invalid_argument("graph: vertex genera and loops do not sum to the ambient genus");
    for (int v = 0; v < nv; ++v)
        if (2 * g.vertices[v].genus - 2 + vertex_valence(g, v) <= 0)
            throw std::invalid_argument("graph: unstable vertex");
}

using Encoding = std::vector<long long>;

// Encoding of the graph under a relabeling new_of[old_vertex]; decorated
// variant drives the canonical form, bare variant drives |Aut|.
Encoding encode(const DecoratedGraph& g, const std::vector<int>& new_of,
                const std::vector<int>& old_of, bool bare) {
    Encoding enc;
    enc.push_back(static_cast<long long>(g.vertices.size()));
    for (int ni = 0; ni < static_cast<int>(g.vertices.size()); ++ni) {
        const auto& v = g.vertices[old_of[ni]];
        enc.push_back(v.genus);
        enc.push_back(static_cast<long long>(v.legs.size()));
        for (int leg : v.legs) enc.push_back(leg);
        if (!bare) {
            enc.push_back(static_cast<long long>(v.kappa.size()));
            for (int k : v.kappa) enc.push_back(k);
        }
    }
    std::vector<std::array<long long, 4>> edges;
    edges.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        long long va = new_of[e.end[0].vertex], pa = bare ? 0 : e.end[0].psi;
        long long vb = new_of[e.end[1].vertex], pb = bare ? 0 : e.end[1].psi;
        if (va > vb || (va == vb && pa > pb)) {
            std::swap(va, vb);
            std::swap(pa, pb);
        }
        edges.push_back({va, vb, pa, pb});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& t : edges)
        for (long long x : t) enc.push_back(x);
    if (!bare)
        for (int p : g.leg_psi) enc.push_back(p);
    return enc;
}

std::uint64_t factorial_u64(std::uint64_t n) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 2; i <= n; ++i) out *= i;
    return out;
}

// Number of half-edge level extensions of any bare-valid vertex
// permutation: m! per parallel-edge class and m! 2^m per loop class.
std::uint64_t half_edge_factor(const DecoratedGraph& g) {
    std::map<std::pair<int, int>, std::uint64_t> classes;
    for (const auto& e : g.edges) {
        int a = e.end[0].vertex, b = e.end[1].vertex;
        if (a > b) std::swap(a, b);
        ++classes[{a, b}];
    }
    std::uint64_t out = 1;
    for (const auto& [pair, m] : classes) {
        out *= factorial_u64(m);
        if (pair.first == pair.second) out <<= m;
    }
    return out;
}

std::string key_of(const Encoding& enc) {
    std::string out;
    out.reserve(enc.size() * 3);
    for (long long x : enc) {
        out += std::to_string(x);
        out += ',';
    }
    return out;
}

}  // namespace

int DecoratedGraph::codim() const {
    int c = static_cast<int>(edges.size());
    for (const auto& e : edges) c += e.end[0].psi + e.end[1].psi;
    for (int p : leg_psi) c += p;
    for (const auto& v : vertices)
        for (int k : v.kappa) c += k;
    return c;
}

CanonicalTerm canonicalize(const MarkedSpace& space, DecoratedGraph g) {
    for (auto& v : g.vertices) {
        std::sort(v.legs.begin(), v.legs.end());
        std::sort(v.kappa.begin(), v.kappa.end());
    }
    validate_graph(space, g);

    CanonicalTerm out;
    out.scale = Rational(1);

    // kappa_0 at a vertex is the scalar (2g_v - 2 + valence).
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        auto& kap = g.vertices[v].kappa;
        auto zeros = std::count(kap.begin(), kap.end(), 0);
        if (zeros > 0) {
            Rational factor(2 * g.vertices[v].genus - 2 + vertex_valence(g, v));
            for (long i = 0; i < zeros; ++i) out.scale *= factor;
            kap.erase(std::remove(kap.begin(), kap.end(), 0), kap.end());
        }
    }

    if (g.codim() > space.dimension()) {
        out.zero = true;
        return out;
    }
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        int dim_v = 3 * g.vertices[v].genus - 3 + vertex_valence(g, v);
        if (vertex_decoration_degree(g, v) > dim_v) {
            out.zero = true;
            return out;
        }
    }

    // Vertices grouped by the iso-invariant (genus, legs); the canonical
    // relabeling ranges over within-group permutations only.
    const int nv = static_cast<int>(g.vertices.size());
    std::vector<int> base(nv);
    std::iota(base.begin(), base.end(), 0);
    auto invariant = [&](int v) { return std::pair<int, const std::vector<int>&>(g.vertices[v].genus, g.vertices[v].legs); };
    std::sort(base.begin(), base.end(), [&](int a, int b) {
        auto ia = invariant(a), ib = invariant(b);
        if (ia != ib) return ia < ib;
        return a < b;
    });
    std::vector<std::pair<int, int>> groups;  // [begin, end) runs in base
    for (int i = 0; i < nv;) {
        int j = i + 1;
        while (j < nv && invariant(base[i]) == invariant(base[j])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    std::uint64_t perm_count = 1;
    for (auto [b, e] : groups) perm_count *= factorial_u64(static_cast<std::uint64_t>(e - b));
    if (perm_count > 2000000ull) throw std::invalid_argument("canonicalize: too many symmetric vertices");

    std::vector<int> old_of = base;  // old vertex at each new position
    std::vector<int> new_of(nv);
    bool have_min = false;
    Encoding best;
    std::vector<int> best_old_of;
    std::uint64_t bare_hits = 0;
    Encoding bare_ref;

    // Enumerate the product of within-group permutations.
    auto run = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            for (int ni = 0; ni < nv; ++ni) new_of[old_of[ni]] = ni;
            Encoding enc = encode(g, new_of, old_of, /*bare=*/false);
            if (!have_min || enc < best) {
                best = enc;
                best_old_of = old_of;
                have_min = true;
            }
            Encoding bare = encode(g, new_of, old_of, /*bare=*/true);
            if (bare_ref.empty()) bare_ref = bare;
            if (bare == bare_ref) ++bare_hits;
            return;
        }
        auto [b, e] = groups[gi];
        std::sort(old_of.begin() + b, old_of.begin() + e);
        do {
            self(self, gi + 1);
        } while (std::next_permutation(old_of.begin() + b, old_of.begin() + e));
        std::sort(old_of.begin() + b, old_of.begin() + e);
    };
    run(run, 0);

    // The bare encoding is permutation-invariant in value across the valid
    // relabelings, so counting hits against the first one counts exactly the
    // vertex permutations preserving the bare structure.
    out.canon.aut_order = bare_hits * half_edge_factor(g);

    // Rebuild the graph in canonical labels.
    for (int ni = 0; ni < nv; ++ni) new_of[best_old_of[ni]] = ni;
    DecoratedGraph canon;
    canon.leg_psi = g.leg_psi;
    canon.vertices.resize(nv);
    for (int ni = 0; ni < nv; ++ni) canon.vertices[ni] = g.vertices[best_old_of[ni]];
    for (const auto& e : g.edges) {
        GraphEdge ne;
        ne.end[0] = {new_of[e.end[0].vertex], e.end[0].psi};
        ne.end[1] = {new_of[e.end[1].vertex], e.end[1].psi};
        if (ne.end[0].vertex > ne.end[1].vertex ||
            (ne.end[0].vertex == ne.end[1].vertex && ne.end[0].psi > ne.end[1].psi))
            std::swap(ne.end[0], ne.end[1]);
        canon.edges.push_back(ne);
    }
    std::sort(canon.edges.begin(), canon.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        auto t = [](const GraphEdge& e) {
            return std::array<int, 4>{e.end[0].vertex, e.end[1].vertex, e.end[0].psi, e.end[1].psi};
        };
        return t(a) < t(b);
    });
    out.canon.graph = std::move(canon);
    out.canon.key = key_of(best);
    return out;
}

void TautClass::add(const DecoratedGraph& g, const Rational& coeff) {
    if (coeff.is_zero()) return;
    CanonicalTerm t = canonicalize(space_, g);
    if (t.zero) return;
    add_canonical(t.canon, coeff * t.scale);
}

void TautClass::add_canonical(const CanonicalGraph& canon, const Rational& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(canon.key);
    if (it == terms_.end()) {
        terms_.emplace(canon.key, Term{canon.graph, canon.aut_order, coeff});
        return;
    }
    it->second.coeff += coeff;
    if (it->second.coeff.is_zero()) terms_.erase(it);
}

TautClass& TautClass::operator+=(const TautClass& o) {
    if (!(space_ == o.space_)) throw std::invalid_argument("TautClass: mismatched spaces");
    for (const auto& [key, term] : o.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, term);
        } else {
            it->second.coeff += term.coeff;
            if (it->second.coeff.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

TautClass& TautClass::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, term] : terms_) term.coeff *= s;
    return *this;
}

bool TautClass::operator==(const TautClass& o) const {
    if (!(space_ == o.space_) || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second.coeff == jt->second.coeff)) return false;
    return true;
}

TautClass TautClass::component(int s) const {
    TautClass out(space_);
    for (const auto& [key, term] : terms_)
        if (term.graph.codim() == s) out.terms_.emplace(key, term);
    return out;
}

bool TautClass::pure_codim(int s) const {
    for (const auto& [key, term] : terms_)
        if (term.graph.codim() != s) return false;
    return true;
}

TautClass fundamental_class(const MarkedSpace& space) {
    TautClass out(space);
    DecoratedGraph g;
    GraphVertex v;
    v.genus = space.genus;
    for (int i = 0; i < space.marking_count(); ++i) v.legs.push_back(i);
    g.vertices.push_back(std::move(v));
    g.leg_psi.assign(space.marking_count(), 0);
    out.add(g, Rational(1));
    return out;
}

TautClass kappa_class(const MarkedSpace& space, int b) {
    TautClass out(space);
    if (b < 0) return out;
    DecoratedGraph g;
    GraphVertex v;
    v.genus = space.genus;
    for (int i = 0; i < space.marking_count(); ++i) v.legs.push_back(i);
    v.kappa.push_back(b);
    g.vertices.push_back(std::move(v));
    g.leg_psi.assign(space.marking_count(), 0);
    out.add(g, Rational(1));
    return out;
}

TautClass boundary_class(const MarkedSpace& space, const Bipartition& b) {
    TautClass out(space);
    out.add(chain_graph(space, Chain{b}, {{0, 0}}), Rational(1));
    return out;
}

TautClass irreducible_boundary(const MarkedSpace& space) {
    TautClass out(space);
    out.add(chain_graph(space, Chain{}, {}, std::nullopt, std::make_pair(0, 0)), Rational(1));
    return out;
}

DecoratedGraph chain_graph(const MarkedSpace& space, const Chain& chain,
                           const std::vector<std::pair<int, int>>& expos,
                           std::optional<int> last_kappa,
                           std::optional<std::pair<int, int>> loop) {
    const int r = static_cast<int>(chain.size());
    if (static_cast<int>(expos.size()) != r)
        throw std::invalid_argument("chain_graph: exponent count does not match chain length");
    DecoratedGraph g;
    g.leg_psi.assign(space.marking_count(), 0);
    g.vertices.resize(r + 1);

    std::vector<int> assigned(space.marking_count(), r);  // default: last vertex
    int prev_h = 0;
    for (int m = 0; m < r; ++m) {
        const Bipartition& part = chain[m];
        if (!bipartition_valid(space, part))
            throw std::invalid_argument("chain_graph: invalid bipartition " + part.str());
        if (m > 0 && !(bipartition_leq(chain[m - 1], part) && chain[m - 1] != part))
            throw std::invalid_argument("chain_graph: chain is not strictly increasing");
        g.vertices[m].genus = part.h - prev_h;
        prev_h = part.h;
        for (const auto& label : part.side) {
            int idx = space.marking_index(label);
            if (assigned[idx] == r) assigned[idx] = m;  // first chain entry containing it
        }
    }
    g.vertices[r].genus = space.genus - prev_h - (loop ? 1 : 0);
    if (g.vertices[r].genus < 0)
        throw std::invalid_argument("chain_graph: negative genus on terminal vertex");
    for (int i = 0; i < space.marking_count(); ++i) g.vertices[assigned[i]].legs.push_back(i);

    for (int m = 0; m < r; ++m) {
        GraphEdge e;
        e.end[0] = {m, expos[m].first};
        e.end[1] = {m + 1, expos[m].second};
        g.edges.push_back(e);
    }
    if (last_kappa) g.vertices[r].kappa.push_back(*last_kappa);
    if (loop) {
        GraphEdge e;
        e.end[0] = {r, loop->first};
        e.end[1] = {r, loop->second};
        g.edges.push_back(e);
    }
    return g;
}

namespace {

// Runs body(i_1..i_r, sign-binomial weight) over 0 <= i_m <= cap_m with
// weight prod_m (-1)^{k_m-1} C(k_m-1, i_m).
template <typename Body>
void signed_binomial_sum(const std::vector<int>& k, const std::vector<int>& caps, Body&& body) {
    const int r = static_cast<int>(k.size());
    std::vector<int> idx(r, 0);
    for (int m = 0; m < r; ++m)
        if (caps[m] < 0) return;  // empty sum
    while (true) {
        Rational w(1);
        for (int m = 0; m < r; ++m) {
            Rational c = Rational::binomial(static_cast<unsigned>(k[m] - 1), static_cast<unsigned>(idx[m]));
            if ((k[m] - 1) % 2 == 1) c = -c;
            w *= c;
        }
        body(idx, w);
        int m = r - 1;
        while (m >= 0 && idx[m] == caps[m]) {
            idx[m] = 0;
            --m;
        }
        if (m < 0) break;
        ++idx[m];
    }
}

void check_lengths(const Chain& chain, const std::vector<int>& k) {
    if (chain.size() != k.size())
        throw std::invalid_argument("bold class: chain and composition lengths differ");
    for (int km : k)
        if (km < 1) throw std::invalid_argument("bold class: composition parts must be positive");
}

}  // namespace

TautClass bold_x(const MarkedSpace& space, const Chain& chain, const std::vector<int>& k) {
    check_lengths(chain, k);
    if (chain.empty()) return fundamental_class(space);
    TautClass out(space);
    const int r = static_cast<int>(k.size());
    std::vector<int> caps(r);
    for (int m = 0; m < r; ++m) caps[m] = k[m] - 1;
    signed_binomial_sum(k, caps, [&](const std::vector<int>& idx, const Rational& w) {
        std::vector<std::pair<int, int>> expos(r);
        for (int m = 0; m < r; ++m) expos[m] = {idx[m], k[m] - 1 - idx[m]};
        out.add(chain_graph(space, chain, expos), w);
    });
    return out;
}

TautClass bold_z(const MarkedSpace& space, const Chain& chain, const std::vector<int>& k, int b) {
    check_lengths(chain, k);
    if (b < -1) throw std::invalid_argument("bold_z: b must be >= -1");
    if (chain.empty()) return kappa_class(space, b);  // b = -1 gives zero
    TautClass out(space);
    const int r = static_cast<int>(k.size());
    std::vector<int> caps(r);
    for (int m = 0; m < r; ++m) caps[m] = k[m] - 1;
    if (b == -1) {
        // The psi-shift convention on the terminal vertex: the outer
        // exponent of the last edge drops by one, emptying at k_r = 1.
        caps[r - 1] = k[r - 1] - 2;
        signed_binomial_sum(k, caps, [&](const std::vector<int>& idx, const Rational& w) {
            std::vector<std::pair<int, int>> expos(r);
            for (int m = 0; m + 1 < r; ++m) expos[m] = {idx[m], k[m] - 1 - idx[m]};
            expos[r - 1] = {idx[r - 1], k[r - 1] - 2 - idx[r - 1]};
            out.add(chain_graph(space, chain, expos), w);
        });
        return out;
    }
    signed_binomial_sum(k, caps, [&](const std::vector<int>& idx, const Rational& w) {
        std::vector<std::pair<int, int>> expos(r);
        for (int m = 0; m < r; ++m) expos[m] = {idx[m], k[m] - 1 - idx[m]};
        out.add(chain_graph(space, chain, expos, b), w);
    });
    return out;
}

TautClass bold_y_tilde(const MarkedSpace& space, const Chain& chain, const std::vector<int>& k,
                       int i, int j) {
    check_lengths(chain, k);
    if (i < 0 || j < 0) throw std::invalid_argument("bold_y_tilde: negative loop exponent");
    TautClass out(space);
    if (!chain.empty() && chain.back().h == space.genus) return out;  // no genus left for the loop
    if (chain.empty()) {
        out.add(chain_graph(space, chain, {}, std::nullopt, std::make_pair(i, j)), Rational(1));
        return out;
    }
    const int r = static_cast<int>(k.size());
    std::vector<int> caps(r);
    for (int m = 0; m < r; ++m) caps[m] = k[m] - 1;
    signed_binomial_sum(k, caps, [&](const std::vector<int>& idx, const Rational& w) {
        std::vector<std::pair<int, int>> expos(r);
        for (int m = 0; m < r; ++m) expos[m] = {idx[m], k[m] - 1 - idx[m]};
        out.add(chain_graph(space, chain, expos, std::nullopt, std::make_pair(i, j)), w);
    });
    return out;
}

TautClass bold_x_tilde(const MarkedSpace& space, const Chain& chain,
                       const std::optional<Bipartition>& extra, const std::vector<int>& k,
                       int i, int j) {
    TautClass out(space);
    if (!extra) return out;  // length -1 convention
    check_lengths(chain, k);
    if (i < 0 || j < 0) throw std::invalid_argument("bold_x_tilde: negative exponent");
    if (!chain.empty() && !(bipartition_leq(chain.back(), *extra) && chain.back() != *extra))
        throw std::invalid_argument("bold_x_tilde: extra bipartition does not extend the chain");
    Chain full = chain;
    full.push_back(*extra);
    if (chain.empty()) {
        out.add(chain_graph(space, full, {{i, j}}), Rational(1));
        return out;
    }
    const int r = static_cast<int>(k.size());
    std::vector<int> caps(r);
    for (int m = 0; m < r; ++m) caps[m] = k[m] - 1;
    signed_binomial_sum(k, caps, [&](const std::vector<int>& idx, const Rational& w) {
        std::vector<std::pair<int, int>> expos(r + 1);
        for (int m = 0; m < r; ++m) expos[m] = {idx[m], k[m] - 1 - idx[m]};
        expos[r] = {i, j};
        out.add(chain_graph(space, full, expos), w);
    });
    return out;
}

TautClass attach_leg_psi(const TautClass& c, const std::string& marking, int e) {
    int idx = c.space().marking_index(marking);
    if (idx < 0) throw std::invalid_argument("attach_leg_psi: unknown marking " + marking);
    if (e < 0) throw std::invalid_argument("attach_leg_psi: negative exponent");
    if (e == 0) return c;
    TautClass out(c.space());
    for (const auto& [key, term] : c.terms()) {
        DecoratedGraph g = term.graph;
        g.leg_psi[idx] += e;
        out.add(g, term.coeff);
    }
    return out;
}

namespace {

std::string decoration_suffix(const MarkedSpace& space, const DecoratedGraph& g) {
    std::string out;
    for (int i = 0; i < static_cast<int>(g.leg_psi.size()); ++i) {
        if (g.leg_psi[i] == 0) continue;
        out += "*psi_" + space.markings[i];
        if (g.leg_psi[i] > 1) out += "^" + std::to_string(g.leg_psi[i]);
    }
    return out;
}

}  // namespace

std::string render_generator(const MarkedSpace& space, const DecoratedGraph& g) {
    // Single vertex: products of kappas and leg psis.
    if (g.edges.empty()) {
        std::string out;
        for (int k : g.vertices[0].kappa) out += (out.empty() ? "" : "*") + ("kappa_" + std::to_string(k));
        std::string legs = decoration_suffix(space, g);
        if (!legs.empty()) out += legs.starts_with("*") && out.empty() ? legs.substr(1) : legs;
        return out.empty() ? "1" : out;
    }

    // Chain shapes: walk from the vertex carrying the anchor. A terminal
    // loop or terminal kappa selects the Y/Z flavor.
    const int nv = static_cast<int>(g.vertices.size());
    int anchor_idx = space.marking_index(MarkedSpace::kAnchor);
    int start = -1;
    for (int v = 0; v < nv; ++v)
        if (std::find(g.vertices[v].legs.begin(), g.vertices[v].legs.end(), anchor_idx) !=
            g.vertices[v].legs.end())
            start = v;

    std::vector<std::pair<int, int>> expos;
    std::optional<std::pair<int, int>> loop;
    std::vector<int> order{start};
    std::vector<char> used_edge(g.edges.size(), 0);
    bool chain_ok = true;
    int cur = start;
    while (true) {
        int next = -1, next_edge = -1;
        std::pair<int, int> ex{0, 0};
        for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
            if (used_edge[ei]) continue;
            const auto& e = g.edges[ei];
            if (e.end[0].vertex == cur && e.end[1].vertex == cur) {
                if (loop || next >= 0) { chain_ok = false; break; }
                loop = {e.end[0].psi, e.end[1].psi};
                used_edge[ei] = 1;
                continue;
            }
            int other = -1;
            std::pair<int, int> cand{0, 0};
            if (e.end[0].vertex == cur) { other = e.end[1].vertex; cand = {e.end[0].psi, e.end[1].psi}; }
            else if (e.end[1].vertex == cur) { other = e.end[0].vertex; cand = {e.end[1].psi, e.end[0].psi}; }
            if (other >= 0) {
                if (next >= 0) { chain_ok = false; break; }
                next = other;
                next_edge = ei;
                ex = cand;
            }
        }
        if (!chain_ok) break;
        if (next < 0) break;
        if (loop) { chain_ok = false; break; }  // loop must sit on the terminal vertex
        used_edge[next_edge] = 1;
        expos.push_back(ex);
        order.push_back(next);
        cur = next;
    }
    if (chain_ok && static_cast<int>(order.size()) == nv &&
        std::all_of(used_edge.begin(), used_edge.end(), [](char u) { return u != 0; })) {
        bool mid_kappa = false;
        for (int m = 0; m + 1 < nv; ++m)
            if (!g.vertices[order[m]].kappa.empty()) mid_kappa = true;
        if (!mid_kappa) {
            const auto& last = g.vertices[order.back()];
            std::string name = loop ? "Yt" : (last.kappa.empty() ? "X" : "Z");
            // Undecorated one-edge and loop graphs get their delta names.
            bool undecorated = decoration_suffix(space, g).empty() && last.kappa.empty();
            for (const auto& e : expos) undecorated = undecorated && e.first == 0 && e.second == 0;
            if (loop) undecorated = undecorated && loop->first == 0 && loop->second == 0;
            if (undecorated && !loop && nv == 2) name = "delta";
            if (undecorated && loop && nv == 1) return "delta_irr" + decoration_suffix(space, g);
            std::string sup, sub_h, sub_s;
            for (const auto& e : expos) sup += "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
            if (loop) sup += "(" + std::to_string(loop->first) + "," + std::to_string(loop->second) + ")";
            if (!last.kappa.empty()) {
                sup += sup.empty() ? "" : ",";
                sup += "kappa_" + std::to_string(last.kappa[0]);
                for (std::size_t i = 1; i < last.kappa.size(); ++i)
                    sup += "*kappa_" + std::to_string(last.kappa[i]);
            }
            int h = 0;
            for (int m = 0; m + 1 < nv; ++m) {
                h += g.vertices[order[m]].genus;
                sub_h += (m ? "," : "") + std::to_string(h);
                sub_s += m ? ";" : "";
                sub_s += "{";
                std::vector<std::string> acc;
                for (int mm = 0; mm <= m; ++mm)
                    for (int leg : g.vertices[order[mm]].legs) acc.push_back(space.markings[leg]);
                std::sort(acc.begin(), acc.end());
                for (std::size_t i = 0; i < acc.size(); ++i) sub_s += (i ? "," : "") + acc[i];
                sub_s += "}";
            }
            std::string out = name;
            if (!sup.empty()) out += "^" + sup;
            if (!sub_h.empty()) out += "_(" + sub_h + ")(" + sub_s + ")";
            if (undecorated && !loop && nv == 2) out = name + "_(" + sub_h + ")(" + sub_s + ")";
            return out + decoration_suffix(space, g);
        }
    }

    // Generic fallback: explicit vertex and edge listing.
    std::string out = "graph[";
    for (int v = 0; v < nv; ++v) {
        if (v) out += " ";
        out += "v" + std::to_string(v) + "(g=" + std::to_string(g.vertices[v].genus) + ",{";
        for (std::size_t i = 0; i < g.vertices[v].legs.size(); ++i)
            out += (i ? "," : "") + space.markings[g.vertices[v].legs[i]];
        out += "}";
        for (int k : g.vertices[v].kappa) out += ",kappa_" + std::to_string(k);
        out += ")";
    }
    for (const auto& e : g.edges)
        out += " e" + std::to_string(e.end[0].vertex) + "(" + std::to_string(e.end[0].psi) + ")-" +
               std::to_string(e.end[1].vertex) + "(" + std::to_string(e.end[1].psi) + ")";
    out += "]";
    return out + decoration_suffix(space, g);
}

}  // namespace tautchern
