#include "tautchern/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace tautchern {

SymPoly::SymPoly(Rational c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

SymPoly SymPoly::var(int index, int exponent) {
    if (index < 1 || exponent < 1) throw std::invalid_argument("SymPoly::var: bad index or exponent");
    SymPoly out;
    out.terms_.emplace(Monomial{{index, exponent}}, Rational(1));
    return out;
}

SymPoly SymPoly::operator-() const {
    SymPoly out = *this;
    for (auto& [mono, c] : out.terms_) c = -c;
    return out;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [mono, c] : o.terms_) {
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) { return *this += -o; }

SymPoly& SymPoly::operator*=(const SymPoly& o) {
    std::map<Monomial, Rational> out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial prod;
            std::size_t i = 0, j = 0;
            while (i < ma.size() || j < mb.size()) {
                if (j == mb.size() || (i < ma.size() && ma[i].first < mb[j].first))
                    prod.push_back(ma[i++]);
                else if (i == ma.size() || mb[j].first < ma[i].first)
                    prod.push_back(mb[j++]);
                else {
                    prod.emplace_back(ma[i].first, ma[i].second + mb[j].second);
                    ++i;
                    ++j;
                }
            }
            Rational c = ca * cb;
            auto it = out.find(prod);
            if (it == out.end()) {
                out.emplace(std::move(prod), std::move(c));
            } else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    terms_ = std::move(out);
    return *this;
}

SymPoly& SymPoly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
}

int SymPoly::weighted_degree() const {
    int best = -1;
    for (const auto& [mono, c] : terms_) {
        int deg = 0;
        for (const auto& [var, exp] : mono) deg += var * exp;
        best = std::max(best, deg);
    }
    return best;
}

std::string SymPoly::str(const std::string& stem) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mono, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string body;
        for (const auto& [var, exp] : mono) {
            if (!body.empty()) body += "*";
            body += stem + std::to_string(var);
            if (exp > 1) body += "^" + std::to_string(exp);
        }
        if (body.empty())
            out += c.str();
        else if (c == Rational(1))
            out += body;
        else
            out += "(" + c.str() + ")*" + body;
    }
    return out;
}

}  // namespace tautchern
