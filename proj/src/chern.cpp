#include "tautchern/chern.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

#include "tautchern/bernoulli.hpp"
#include "tautchern/poly.hpp"
#include "tautchern/series.hpp"
#include "tautchern/tautprod.hpp"

namespace tautchern {

namespace {

struct ChainTable {
    // chains[r] = all strictly increasing chains of length r, with the
    // per-chain boundary coefficient products filled in by the caller.
    std::vector<std::vector<Chain>> chains;
    std::vector<Bipartition> bips;
};

ChainTable build_chains(const MarkedSpace& space, int max_len) {
    ChainTable table;
    table.bips = stable_bipartitions(space);
    for (int r = 0; r <= max_len; ++r) table.chains.push_back(enumerate_chains(space, r));
    return table;
}

Rational chain_coefficient(const DivisorSpec& divisor, const Chain& chain,
                           const std::vector<int>& k) {
    Rational out(1);
    for (std::size_t j = 0; j < chain.size(); ++j) {
        long long aj = divisor.a_of(chain[j]);
        if (aj == 0) return Rational(0);
        out *= Rational::int_pow(aj, static_cast<unsigned>(k[j])) /
               Rational::factorial(static_cast<unsigned>(k[j]));
    }
    return out;
}

void accumulate(std::map<int, TautClass>& acc, int degree, const TautClass& cls, const Rational& w) {
    if (w.is_zero() || cls.is_zero()) return;
    if (!cls.pure_codim(degree)) throw std::logic_error("chern_char_theorem: term in a wrong degree");
    auto it = acc.find(degree);
    if (it == acc.end()) return;
    TautClass scaled = cls;
    scaled *= w;
    it->second += scaled;
}

std::map<int, TautClass> run_sharded(const MarkedSpace& space, int smax, int workers,
                                     const std::vector<std::function<void(std::map<int, TautClass>&)>>& jobs) {
    if (workers < 1) workers = 1;
    auto blank = [&] {
        std::map<int, TautClass> acc;
        for (int s = 0; s <= smax; ++s) acc.emplace(s, TautClass(space));
        return acc;
    };
    if (workers == 1 || jobs.size() <= 1) {
        auto acc = blank();
        for (const auto& job : jobs) job(acc);
        return acc;
    }
    std::vector<std::map<int, TautClass>> parts;
    for (int w = 0; w < workers; ++w) parts.push_back(blank());
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < jobs.size();
                 i += static_cast<std::size_t>(workers))
                jobs[i](parts[static_cast<std::size_t>(w)]);
        });
    for (auto& th : pool) th.join();
    auto acc = std::move(parts[0]);
    for (int w = 1; w < workers; ++w)
        for (auto& [s, cls] : acc) cls += parts[static_cast<std::size_t>(w)].at(s);
    return acc;
}

// Runs body(chain, k, coefficient) over every chain/composition pair for
// weight a, skipping chains whose boundary coefficients vanish. a = 0
// contributes the empty chain with coefficient 1.
template <typename Body>
void for_each_chain_term(const DivisorSpec& divisor, const ChainTable& table, int a, Body&& body) {
    if (a == 0) {
        body(Chain{}, std::vector<int>{}, Rational(1));
        return;
    }
    for (int r = 1; r <= a && r < static_cast<int>(table.chains.size()); ++r) {
        if (table.chains[static_cast<std::size_t>(r)].empty()) continue;
        for (const auto& k : compositions(a, r)) {
            for (const auto& chain : table.chains[static_cast<std::size_t>(r)]) {
                Rational coeff = chain_coefficient(divisor, chain, k);
                if (coeff.is_zero()) continue;
                body(chain, k, coeff);
            }
        }
    }
}

}  // namespace

GradedChernData chern_char_theorem(const DivisorSpec& divisor, int smax, int workers) {
    const MarkedSpace& space = divisor.space;
    if (smax < 0 || smax > space.dimension())
        throw std::invalid_argument("chern_char_theorem: smax out of range");
    const int tmax = smax + 1;
    ChainTable table = build_chains(space, tmax);

    std::vector<std::function<void(std::map<int, TautClass>&)>> jobs;

    for (int t = 1; t <= tmax; ++t) {
        for (int a = 0; a <= t; ++a) {
            const int b = t - a;

            // Kappa-weighted summand: B_b(ell)/b! Z^{k,b-1}.
            jobs.emplace_back([&divisor, &table, &space, t, a, b](std::map<int, TautClass>& acc) {
                Rational w = bernoulli_poly(static_cast<unsigned>(b), divisor.ell) /
                             Rational::factorial(static_cast<unsigned>(b));
                if (w.is_zero()) return;
                for_each_chain_term(divisor, table, a,
                                    [&](const Chain& chain, const std::vector<int>& k, const Rational& coeff) {
                                        accumulate(acc, t - 1, bold_z(space, chain, k, b - 1), w * coeff);
                                    });
            });

            // Section-weighted summand: for b > 0, alpha + beta = b,
            // (-1)^beta B_beta(ell)/(alpha! beta!) d_p^alpha (-psi_p)^{b-1} X^k
            // over markings p outside the top of the chain.
            if (b > 0) {
                jobs.emplace_back([&divisor, &table, &space, t, a, b](std::map<int, TautClass>& acc) {
                    for_each_chain_term(divisor, table, a, [&](const Chain& chain,
                                                               const std::vector<int>& k,
                                                               const Rational& coeff) {
                        TautClass x = bold_x(space, chain, k);
                        for (int p = 0; p < space.marking_count(); ++p) {
                            const std::string& label = space.markings[p];
                            if (!chain.empty() && chain.back().contains(label)) continue;
                            TautClass with_psi = attach_leg_psi(x, label, b - 1);
                            if ((b - 1) % 2 == 1) with_psi *= Rational(-1);
                            long long dp = divisor.d_of(label);
                            for (int alpha = 0; alpha <= b; ++alpha) {
                                int beta = b - alpha;
                                if (dp == 0 && alpha > 0) continue;
                                Rational w = bernoulli_poly(static_cast<unsigned>(beta), divisor.ell) /
                                             (Rational::factorial(static_cast<unsigned>(alpha)) *
                                              Rational::factorial(static_cast<unsigned>(beta)));
                                if (beta % 2 == 1) w = -w;
                                w *= Rational::int_pow(dp, static_cast<unsigned>(alpha));
                                accumulate(acc, t - 1, with_psi, w * coeff);
                            }
                        }
                    });
                });
            }
        }
    }

    // Node-class summand: even b only, Bernoulli numbers, the three shapes.
    for (int t = 2; t <= tmax; ++t) {
        for (int b = 2; b <= t; b += 2) {
            const int a = t - b;
            jobs.emplace_back([&divisor, &table, &space, t, a, b](std::map<int, TautClass>& acc) {
                Rational w = bernoulli_number(static_cast<unsigned>(b)) /
                             Rational::factorial(static_cast<unsigned>(b));
                for_each_chain_term(divisor, table, a, [&](const Chain& chain,
                                                           const std::vector<int>& k,
                                                           const Rational& coeff) {
                    for (int e = 0; e <= b - 2; ++e) {
                        Rational sign = (e % 2 == 1) ? Rational(-1) : Rational(1);
                        Rational full = w * coeff * sign;
                        const int j = b - 2 - e;
                        for (const auto& lt : table.bips) {
                            if (!chain.empty() &&
                                !(bipartition_leq(chain.back(), lt) && chain.back() != lt))
                                continue;
                            accumulate(acc, t - 1, bold_x_tilde(space, chain, lt, k, e, j), full);
                        }
                        accumulate(acc, t - 1, bold_y_tilde(space, chain, k, e, j), full);
                        if (!chain.empty()) {
                            Chain head(chain.begin(), chain.end() - 1);
                            std::vector<int> khead(k.begin(), k.end() - 1);
                            Rational merged = full;
                            if (k.back() % 2 == 1) merged = -merged;
                            accumulate(acc, t - 1,
                                       bold_x_tilde(space, head, chain.back(), khead, e + k.back(), j),
                                       merged);
                        }
                    }
                });
            });
        }
    }

    GradedChernData out;
    out.space = space;
    out.smax = smax;
    out.ch = run_sharded(space, smax, workers, jobs);
    return out;
}

namespace {

struct TautRing {
    using Elem = TautClass;
    const MarkedSpace* space;
    Elem zero() const { return TautClass(*space); }
    Elem one() const { return fundamental_class(*space); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return gp_product(a, b); }
    Elem scale(const Elem& a, const Rational& s) const { return a * s; }
};

}  // namespace

std::map<int, TautClass> invert_to_chern(const GradedChernData& ch, int tmax, bool negate) {
    if (tmax < 0) throw std::invalid_argument("invert_to_chern: negative tmax");
    TautRing ring{&ch.space};
    GradedSeries<TautRing> u;
    for (int s = 1; s <= tmax; ++s) {
        auto it = ch.ch.find(s);
        if (it == ch.ch.end()) {
            if (s <= ch.space.dimension())
                throw std::invalid_argument("invert_to_chern: missing component " + std::to_string(s));
            continue;  // beyond the dimension everything vanishes
        }
        TautClass e = it->second;
        if (negate) e *= Rational(-1);
        Rational w = Rational::factorial(static_cast<unsigned>(s - 1));
        if ((s - 1) % 2 == 1) w = -w;
        e *= w;
        if (!e.is_zero()) u.emplace(s, std::move(e));
    }
    GradedSeries<TautRing> series = graded_exp(ring, u, tmax);
    std::map<int, TautClass> out;
    for (int t = 0; t <= tmax; ++t) {
        auto it = series.find(t);
        out.emplace(t, it == series.end() ? TautClass(ch.space) : it->second);
    }
    return out;
}

BNRequest BNRequest::make(int r, DivisorSpec divisor) {
    if (r < 0) throw std::invalid_argument("BNRequest: r must be >= 0");
    BNRequest out{r, std::move(divisor)};
    long long d = out.degree();
    long long g = out.divisor.space.genus;
    if (!(d < g + r))
        throw std::invalid_argument("BNRequest: requires d < g + r (d = " + std::to_string(d) + ")");
    return out;
}

long long BNRequest::rho() const {
    long long g = divisor.space.genus;
    long long d = degree();
    return g - static_cast<long long>(r + 1) * (g - d + r);
}

SymPoly bn_pullback_symbolic(const BNRequest& req) {
    long long g = req.divisor.space.genus;
    long long q = g - req.degree() + req.r;
    SymPolyRing ring;
    auto entry = [&](int k) {
        if (k == 0) return SymPoly(Rational(1));
        return SymPoly::var(k);
    };
    return thom_porteous<SymPolyRing>(ring, entry, req.r + 1, static_cast<int>(q));
}

TautClass bn_pullback_expanded(const BNRequest& req, int smax, int workers) {
    const MarkedSpace& space = req.divisor.space;
    if (space.genus > 3)
        throw std::invalid_argument(
            "bn_pullback_expanded: expanded mode is limited to genus <= 3 (strata products are "
            "the cost center); use symbolic mode");
    long long g = space.genus;
    long long q = g - req.degree() + req.r;
    long long target = g - req.rho();  // total codimension of the determinant
    if (target > smax)
        throw std::invalid_argument("bn_pullback_expanded: smax below the class codimension");
    // Entries run up to c_{q+r}; everything above the dimension vanishes.
    int need = static_cast<int>(std::min<long long>(q + req.r, space.dimension()));
    GradedChernData ch = chern_char_theorem(req.divisor, space.dimension(), workers);
    std::map<int, TautClass> c = invert_to_chern(ch, need, true);
    TautRing ring{&space};
    auto entry = [&](int k) {
        auto it = c.find(k);
        if (it == c.end()) return TautClass(space);
        return it->second;
    };
    return thom_porteous<TautRing>(ring, entry, req.r + 1, static_cast<int>(q));
}

}  // namespace tautchern
