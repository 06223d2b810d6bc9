#include "tautchern/ucurve.hpp"

#include <stdexcept>

namespace tautchern {

DivisorSpec DivisorSpec::make(MarkedSpace space, long long ell,
                              std::map<std::string, long long> d,
                              std::map<Bipartition, long long> a) {
    for (const auto& [label, value] : d)
        if (space.marking_index(label) < 0)
            throw std::invalid_argument("DivisorSpec: unknown marking " + label);
    for (const auto& [part, value] : a)
        if (!bipartition_valid(space, part))
            throw std::invalid_argument("DivisorSpec: invalid bipartition " + part.str());
    DivisorSpec out;
    out.space = std::move(space);
    out.ell = ell;
    out.d = std::move(d);
    out.a = std::move(a);
    return out;
}

long long DivisorSpec::d_of(const std::string& marking) const {
    auto it = d.find(marking);
    return it == d.end() ? 0 : it->second;
}

long long DivisorSpec::a_of(const Bipartition& b) const {
    auto it = a.find(b);
    return it == a.end() ? 0 : it->second;
}

long long DivisorSpec::total_degree() const {
    long long total = ell * (2 * space.genus - 2);
    for (const auto& [label, value] : d) total += value;
    return total;
}

Factor Factor::k() { return Factor{Kind::K, -1, {}}; }
Factor Factor::sigma(int marking_index) { return Factor{Kind::Sigma, marking_index, {}}; }
Factor Factor::boundary(Bipartition b) { return Factor{Kind::Boundary, -1, std::move(b)}; }

int UMonomial::codim() const {
    int c = k_exp + sigma_pow;
    for (const auto& f : chain) c += 1 + f.psi_in + f.psi_out;
    if (node) c += 2 + node->psi_in + node->psi_out;
    return c;
}

std::string UMonomial::key() const {
    std::string out = "K" + std::to_string(k_exp) + "|s" + std::to_string(sigma_marking) + "^" +
                      std::to_string(sigma_pow) + "|";
    for (const auto& f : chain) {
        out += "C" + std::to_string(f.part.h) + ":";
        for (const auto& m : f.part.side) out += m + ",";
        out += "(" + std::to_string(f.psi_in) + "," + std::to_string(f.psi_out) + ")";
    }
    if (node) {
        out += node->non_separating ? "|B" : "|A" + std::to_string(node->part.h) + ":";
        if (!node->non_separating)
            for (const auto& m : node->part.side) out += m + ",";
        out += "(" + std::to_string(node->psi_in) + "," + std::to_string(node->psi_out) + ")";
    }
    return out;
}

std::string UMonomial::str(const MarkedSpace& space) const {
    std::string out;
    if (k_exp > 0) out += "K^" + std::to_string(k_exp);
    if (sigma_pow > 0) {
        if (!out.empty()) out += "*";
        out += "sigma_" + space.markings[sigma_marking];
        if (sigma_pow > 1) out += "^" + std::to_string(sigma_pow);
    }
    for (const auto& f : chain) {
        if (!out.empty()) out += "*";
        out += "C^(" + std::to_string(f.psi_in) + "," + std::to_string(f.psi_out) + ")_" + f.part.str();
    }
    if (node) {
        if (!out.empty()) out += "*";
        out += node->non_separating ? "B" : "A_" + node->part.str();
        out += "^(" + std::to_string(node->psi_in) + "," + std::to_string(node->psi_out) + ")";
    }
    return out.empty() ? "1" : out;
}

void add_monomial(MonomialSum& sum, const UMonomial& m, const Rational& coeff) {
    if (coeff.is_zero()) return;
    std::string key = m.key();
    auto it = sum.find(key);
    if (it == sum.end()) {
        sum.emplace(std::move(key), std::make_pair(m, coeff));
        return;
    }
    it->second.second += coeff;
    if (it->second.second.is_zero()) sum.erase(it);
}

MonomialSum mul_umonomial(const MarkedSpace& space, const UMonomial& m, const Factor& f) {
    if (m.node) throw std::invalid_argument("mul_umonomial: node classes multiply nothing further");
    MonomialSum out;
    switch (f.kind) {
        case Factor::Kind::K: {
            if (m.sigma_pow > 0) return out;  // K * sigma = 0
            UMonomial next = m;
            next.k_exp += 1;
            add_monomial(out, next, Rational(1));
            return out;
        }
        case Factor::Kind::Sigma: {
            if (f.marking < 0 || f.marking >= space.marking_count())
                throw std::invalid_argument("mul_umonomial: bad section index");
            if (m.k_exp > 0) return out;                                  // K * sigma = 0
            if (m.sigma_pow > 0 && m.sigma_marking != f.marking) return out;  // disjoint sections
            const std::string& label = space.markings[f.marking];
            for (const auto& cf : m.chain)
                if (cf.part.contains(label)) return out;  // section misses the component
            UMonomial next = m;
            next.sigma_marking = f.marking;
            next.sigma_pow += 1;
            add_monomial(out, next, Rational(1));
            return out;
        }
        case Factor::Kind::Boundary: {
            if (!bipartition_valid(space, f.part))
                throw std::invalid_argument("mul_umonomial: invalid bipartition " + f.part.str());
            if (m.sigma_pow > 0 && f.part.contains(space.markings[m.sigma_marking])) return out;
            // Position against the existing chain: equality contributes the
            // excess factor (-psi - psi) on that edge, a comparable new
            // entry is inserted in order, anything incomparable kills it.
            std::size_t insert_at = m.chain.size();
            for (std::size_t i = 0; i < m.chain.size(); ++i) {
                const Bipartition& cur = m.chain[i].part;
                if (cur == f.part) {
                    UMonomial left = m, right = m;
                    left.chain[i].psi_in += 1;
                    right.chain[i].psi_out += 1;
                    add_monomial(out, left, Rational(-1));
                    add_monomial(out, right, Rational(-1));
                    return out;
                }
                bool below = bipartition_leq(f.part, cur);
                bool above = bipartition_leq(cur, f.part);
                if (!below && !above) return out;  // incomparable
                if (below) {
                    insert_at = i;
                    break;
                }
            }
            UMonomial next = m;
            next.chain.insert(next.chain.begin() + static_cast<std::ptrdiff_t>(insert_at),
                              ChainFactor{f.part, 0, 0});
            add_monomial(out, next, Rational(1));
            return out;
        }
    }
    return out;
}

MonomialSum mul_sum(const MarkedSpace& space, const MonomialSum& sum, const Factor& f) {
    MonomialSum out;
    for (const auto& [key, entry] : sum) {
        MonomialSum part = mul_umonomial(space, entry.first, f);
        for (const auto& [pkey, pentry] : part)
            add_monomial(out, pentry.first, pentry.second * entry.second);
    }
    return out;
}

namespace {

Chain chain_of(const UMonomial& m) {
    Chain out;
    for (const auto& f : m.chain) out.push_back(f.part);
    return out;
}

std::vector<std::pair<int, int>> expos_of(const UMonomial& m) {
    std::vector<std::pair<int, int>> out;
    for (const auto& f : m.chain) out.emplace_back(f.psi_in, f.psi_out);
    return out;
}

void check_drop(const MarkedSpace& space, const UMonomial& m, const TautClass& result) {
    for (const auto& [key, term] : result.terms())
        if (term.graph.codim() != m.codim() - 1)
            throw std::logic_error("push_forward: codimension did not drop by one");
    (void)space;
}

}  // namespace

TautClass push_forward(const MarkedSpace& space, const UMonomial& m) {
    if (m.node)
        throw std::invalid_argument("push_forward: node-bearing monomial (use push_forward_node)");
    if (m.k_exp > 0 && m.sigma_pow > 0)
        throw std::invalid_argument("push_forward: K and section powers cannot coexist");
    TautClass out(space);
    if (m.sigma_pow > 0) {
        // sigma_p^b against the chain: the section power trades for a leg
        // psi power with alternating sign.
        const std::string& label = space.markings[m.sigma_marking];
        for (const auto& cf : m.chain)
            if (cf.part.contains(label))
                throw std::invalid_argument("push_forward: section marking sits inside the chain");
        TautClass base(space);
        if (m.chain.empty())
            base = fundamental_class(space);
        else
            base.add(chain_graph(space, chain_of(m), expos_of(m)), Rational(1));
        out = attach_leg_psi(base, label, m.sigma_pow - 1);
        if ((m.sigma_pow - 1) % 2 == 1) out *= Rational(-1);
        check_drop(space, m, out);
        return out;
    }
    if (m.k_exp > 0) {
        // K^b lands as kappa_{b-1} on the terminal vertex.
        if (m.chain.empty()) {
            out = kappa_class(space, m.k_exp - 1);
        } else {
            out.add(chain_graph(space, chain_of(m), expos_of(m), m.k_exp - 1), Rational(1));
        }
        check_drop(space, m, out);
        return out;
    }
    if (m.chain.empty()) return out;  // pushforward of the fundamental monomial
    // Bare chain: the terminal outer exponent absorbs the fiber direction.
    if (m.chain.back().psi_out == 0) return out;
    auto expos = expos_of(m);
    expos.back().second -= 1;
    out.add(chain_graph(space, chain_of(m), expos), Rational(1));
    check_drop(space, m, out);
    return out;
}

TautClass push_forward_node(const MarkedSpace& space, const NodeClass& node, const UMonomial& m) {
    if (m.k_exp > 0 || m.sigma_pow > 0 || m.node)
        throw std::invalid_argument("push_forward_node: monomial must be a pure chain");
    TautClass out(space);
    UMonomial with_node = m;
    with_node.node = node;
    if (node.non_separating) {
        // Loop at the terminal vertex; impossible when the chain has
        // exhausted the genus.
        if (!m.chain.empty() && m.chain.back().part.h == space.genus) return out;
        out.add(chain_graph(space, chain_of(m), expos_of(m), std::nullopt,
                            std::make_pair(node.psi_in, node.psi_out)),
                Rational(1));
        check_drop(space, with_node, out);
        return out;
    }
    if (!bipartition_valid(space, node.part))
        throw std::invalid_argument("push_forward_node: invalid bipartition " + node.part.str());
    if (m.chain.empty() ||
        (bipartition_leq(m.chain.back().part, node.part) && m.chain.back().part != node.part)) {
        Chain chain = chain_of(m);
        chain.push_back(node.part);
        auto expos = expos_of(m);
        expos.emplace_back(node.psi_in, node.psi_out);
        out.add(chain_graph(space, chain, expos), Rational(1));
        check_drop(space, with_node, out);
        return out;
    }
    if (m.chain.back().part == node.part && m.chain.back().psi_out == 0) {
        auto expos = expos_of(m);
        expos.back() = {expos.back().first + node.psi_in + 1, node.psi_out};
        out.add(chain_graph(space, chain_of(m), expos), Rational(-1));
        check_drop(space, with_node, out);
        return out;
    }
    return out;  // every remaining configuration vanishes
}

}  // namespace tautchern
