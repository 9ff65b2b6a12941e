#pragma once

// Multivariate polynomials over the rationals with indeterminates x0, x1, ...
// The symbolic check mode leaves carrier coordinates generic, so identities
// that hold here hold for every specialization; equality is decided by the
// normal form (sorted monomial map, zero coefficients pruned).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace limitweight {

class Polynomial {
public:
    // Exponent vectors with trailing zeros trimmed, so x0^2 has key {2}
    // regardless of how many variables are in play.
    using Monomial = std::vector<unsigned>;

    Polynomial() = default;
    explicit Polynomial(long c) : Polynomial(Rational(c)) {}
    explicit Polynomial(const Rational& c) {
        if (!limitweight::is_zero(c)) t_[{}] = c;
    }

    static Polynomial variable(std::size_t index) {
        Polynomial p;
        Monomial m(index + 1, 0);
        m[index] = 1;
        p.t_[m] = Rational(1);
        return p;
    }

    bool is_zero() const { return t_.empty(); }

    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

    Rational constant_value() const {
        if (!is_constant()) throw Error("polynomial is not constant");
        return t_.empty() ? Rational(0) : t_.begin()->second;
    }

    const std::map<Monomial, Rational>& terms() const { return t_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial c = a;
        for (const auto& [m, v] : b.t_) c.add_term(m, v);
        return c;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial c = a;
        for (const auto& [m, v] : b.t_) c.add_term(m, -v);
        return c;
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial c;
        for (const auto& [m, v] : a.t_) c.t_[m] = -v;
        return c;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial c;
        for (const auto& [ma, va] : a.t_)
            for (const auto& [mb, vb] : b.t_) c.add_term(mul_monomial(ma, mb), va * vb);
        return c;
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
        if (!b.is_constant() || b.is_zero()) throw Error("polynomial division requires a nonzero constant divisor");
        Rational d = b.constant_value();
        Polynomial c;
        for (const auto& [m, v] : a.t_) c.t_[m] = v / d;
        return c;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Rational eval(const std::vector<Rational>& point) const {
        Rational acc(0);
        for (const auto& [m, v] : t_) {
            Rational term = v;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i >= point.size() && m[i] > 0) throw Error("evaluation point misses a variable");
                for (unsigned k = 0; k < m[i]; ++k) term = term * point[i];
            }
            acc = acc + term;
        }
        return acc;
    }

    // Renders "1/2*a1^2*b2 - c3" style; variable names default to x0, x1, ...
    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [m, v] : t_) {
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += i < names.size() ? names[i] : "x" + std::to_string(i);
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            std::string cs = limitweight::to_string(v < 0 ? Rational(-v) : v);
            std::string piece;
            if (mono.empty())
                piece = cs;
            else if (cs == "1")
                piece = mono;
            else
                piece = cs + "*" + mono;
            if (out.empty())
                out = (v < 0 ? "-" : "") + piece;
            else
                out += (v < 0 ? " - " : " + ") + piece;
        }
        return out;
    }

private:
    static Monomial mul_monomial(const Monomial& a, const Monomial& b) {
        Monomial m(a.size() > b.size() ? a : b);
        const Monomial& small = a.size() > b.size() ? b : a;
        for (std::size_t i = 0; i < small.size(); ++i) m[i] += small[i];
        return m;
    }

    void add_term(const Monomial& m, const Rational& v) {
        auto it = t_.find(m);
        if (it == t_.end()) {
            if (!limitweight::is_zero(v)) t_[m] = v;
            return;
        }
        it->second = it->second + v;
        if (limitweight::is_zero(it->second)) t_.erase(it);
    }

    std::map<Monomial, Rational> t_;
};

}  // namespace limitweight
