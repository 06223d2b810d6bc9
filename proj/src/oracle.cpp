#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tautchern/bernoulli.hpp"
#include "tautchern/chern.hpp"

namespace tautchern {

const TautClass& GradedChernData::component(int s) const {
    auto it = ch.find(s);
    if (it == ch.end()) throw std::out_of_range("GradedChernData: degree " + std::to_string(s));
    return it->second;
}

namespace {

void accumulate(std::map<int, TautClass>& acc, int degree, const TautClass& cls, const Rational& w) {
    if (cls.is_zero() || w.is_zero()) return;
    if (!cls.pure_codim(degree)) throw std::logic_error("oracle: term landed in a wrong degree");
    auto it = acc.find(degree);
    if (it == acc.end()) return;  // beyond the requested range
    TautClass scaled = cls;
    scaled *= w;
    it->second += scaled;
}

// Deterministic sharded run: jobs are closures over a private accumulator;
// partial results merge in worker order, and the merge is an exact
// commutative map union, so the outcome is independent of the worker count.
std::map<int, TautClass> run_jobs(const MarkedSpace& space, int smax, int workers,
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
    parts.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) parts.push_back(blank());
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < jobs.size(); i += static_cast<std::size_t>(workers))
                jobs[i](parts[static_cast<std::size_t>(w)]);
        });
    for (auto& th : pool) th.join();
    auto acc = std::move(parts[0]);
    for (int w = 1; w < workers; ++w)
        for (auto& [s, cls] : acc) cls += parts[static_cast<std::size_t>(w)].at(s);
    return acc;
}

}  // namespace

GradedChernData chern_char_oracle(const DivisorSpec& divisor, int smax, int workers) {
    const MarkedSpace& space = divisor.space;
    if (smax < 0 || smax > space.dimension())
        throw std::invalid_argument("chern_char_oracle: smax out of range");
    const int order = smax + 1;  // top total codimension on the universal curve

    // C^a/a! by iterated pairwise products, never the closed multinomial.
    std::vector<MonomialSum> c_pow(static_cast<std::size_t>(order) + 1);
    add_monomial(c_pow[0], UMonomial{}, Rational(1));
    for (int a = 1; a <= order; ++a) {
        MonomialSum acc;
        for (const auto& [part, coeff] : divisor.a) {
            if (coeff == 0) continue;
            MonomialSum one = mul_sum(space, c_pow[static_cast<std::size_t>(a) - 1],
                                      Factor::boundary(part));
            for (const auto& [key, entry] : one)
                add_monomial(acc, entry.first, entry.second * Rational(coeff));
        }
        for (const auto& [key, entry] : acc)
            add_monomial(c_pow[static_cast<std::size_t>(a)], entry.first,
                         entry.second / Rational(a));
    }
    MonomialSum c_all;
    for (const auto& sum : c_pow)
        for (const auto& [key, entry] : sum) add_monomial(c_all, entry.first, entry.second);

    // e^{C+S}: section self-powers against the boundary expansion.
    MonomialSum exp_cs = c_all;
    for (int p = 0; p < space.marking_count(); ++p) {
        long long dp = divisor.d_of(space.markings[p]);
        if (dp == 0) continue;
        MonomialSum cur = c_all;
        for (int c = 1; c <= order; ++c) {
            cur = mul_sum(space, cur, Factor::sigma(p));
            if (cur.empty()) break;
            Rational w = Rational::int_pow(dp, static_cast<unsigned>(c)) / Rational::factorial(static_cast<unsigned>(c));
            for (const auto& [key, entry] : cur) {
                if (entry.first.codim() > order) continue;
                add_monomial(exp_cs, entry.first, entry.second * w);
            }
        }
    }

    std::vector<Bipartition> bips = stable_bipartitions(space);
    std::vector<std::function<void(std::map<int, TautClass>&)>> jobs;

    // First summand: direct pushforward of e^{C+S}.
    jobs.emplace_back([&, exp_cs](std::map<int, TautClass>& acc) {
        for (const auto& [key, entry] : exp_cs) {
            int deg = entry.first.codim() - 1;
            if (deg < 0 || deg > smax) continue;
            accumulate(acc, deg, push_forward(space, entry.first), entry.second);
        }
    });

    // K-powers against e^{C+S} (sections die on contact with K).
    for (int t = 1; t <= order; ++t) {
        jobs.emplace_back([&, t](std::map<int, TautClass>& acc) {
            Rational w = bernoulli_poly(static_cast<unsigned>(t), divisor.ell) /
                         Rational::factorial(static_cast<unsigned>(t));
            if (w.is_zero()) return;
            MonomialSum cur = exp_cs;
            for (int i = 0; i < t; ++i) cur = mul_sum(space, cur, Factor::k());
            for (const auto& [key, entry] : cur) {
                int deg = entry.first.codim() - 1;
                if (deg > smax) continue;
                accumulate(acc, deg, push_forward(space, entry.first), entry.second * w);
            }
        });
    }

    // Section powers against e^{C+S}.
    for (int t = 1; t <= order; ++t) {
        for (int p = 0; p < space.marking_count(); ++p) {
            jobs.emplace_back([&, t, p](std::map<int, TautClass>& acc) {
                Rational w = bernoulli_poly(static_cast<unsigned>(t), divisor.ell) /
                             Rational::factorial(static_cast<unsigned>(t));
                if (t % 2 == 1) w = -w;
                if (w.is_zero()) return;
                MonomialSum cur = exp_cs;
                for (int i = 0; i < t; ++i) cur = mul_sum(space, cur, Factor::sigma(p));
                for (const auto& [key, entry] : cur) {
                    int deg = entry.first.codim() - 1;
                    if (deg > smax) continue;
                    accumulate(acc, deg, push_forward(space, entry.first), entry.second * w);
                }
            });
        }
    }

    // Node-class correction against e^C.
    for (int b = 2; b <= order; b += 2) {
        for (int e = 0; e <= b - 2; ++e) {
            jobs.emplace_back([&, b, e](std::map<int, TautClass>& acc) {
                Rational w = bernoulli_number(static_cast<unsigned>(b)) /
                             Rational::factorial(static_cast<unsigned>(b));
                if (e % 2 == 1) w = -w;
                NodeClass loop_node{true, Bipartition{}, e, b - 2 - e};
                for (const auto& [key, entry] : c_all) {
                    if (entry.first.codim() + b > order) continue;
                    int deg = entry.first.codim() + b - 1;
                    accumulate(acc, deg, push_forward_node(space, loop_node, entry.first),
                               entry.second * w);
                    for (const auto& part : bips) {
                        NodeClass sep{false, part, e, b - 2 - e};
                        accumulate(acc, deg, push_forward_node(space, sep, entry.first),
                                   entry.second * w);
                    }
                }
            });
        }
    }

    GradedChernData out;
    out.space = space;
    out.smax = smax;
    out.ch = run_jobs(space, smax, workers, jobs);
    return out;
}

}  // namespace tautchern
