#pragma once

// Finite Laurent polynomials in a formal parameter eps with exact coefficients.
// eps stands for 1/n; the limit n -> infinity of a family exists exactly when
// no negative-degree term survives, and then equals the degree-0 coefficient.
//
// A series can carry a degree bound |deg| <= bound derived from the carrier
// dimension. Crossing it throws instead of truncating: on nilpotent carriers
// of that dimension no legitimate computation ever reaches such degrees, so an
// overflow means the computation itself is misconfigured.

#include <map>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace limitweight {

template <class R>
class LaurentSeries {
public:
    using coeff_type = R;

    LaurentSeries() = default;
    explicit LaurentSeries(long c) : LaurentSeries(R(c)) {}
    explicit LaurentSeries(const R& c) {
        if (!limitweight::is_zero(c)) t_[0] = c;
    }

    static LaurentSeries term(const R& c, int degree) {
        LaurentSeries s;
        if (!limitweight::is_zero(c)) s.t_[degree] = c;
        return s;
    }

    static LaurentSeries eps(int k = 1) { return term(R(1), k); }

    int bound() const { return bound_; }
    LaurentSeries& with_bound(int b) {
        bound_ = b;
        check_bound();
        return *this;
    }

    const std::map<int, R>& terms() const { return t_; }

    R coeff(int degree) const {
        auto it = t_.find(degree);
        return it == t_.end() ? R(0) : it->second;
    }

    bool is_zero() const { return t_.empty(); }

    int min_degree() const { return t_.empty() ? 0 : t_.begin()->first; }
    int max_degree() const { return t_.empty() ? 0 : t_.rbegin()->first; }

    bool limit_exists() const { return t_.empty() || t_.begin()->first >= 0; }

    // Coefficient of eps^0 once every negative degree has cancelled.
    R limit() const {
        if (!limit_exists()) throw LimitError(min_degree(), "eps degree " + std::to_string(min_degree()));
        return coeff(0);
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries c = a;
        for (const auto& [d, v] : b.t_) c.add_term(d, v);
        c.bound_ = combine_bound(a.bound_, b.bound_);
        c.check_bound();
        return c;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries c = a;
        for (const auto& [d, v] : b.t_) c.add_term(d, -v);
        c.bound_ = combine_bound(a.bound_, b.bound_);
        c.check_bound();
        return c;
    }

    friend LaurentSeries operator-(const LaurentSeries& a) {
        LaurentSeries c;
        for (const auto& [d, v] : a.t_) c.t_[d] = -v;
        c.bound_ = a.bound_;
        return c;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries c;
        for (const auto& [da, va] : a.t_)
            for (const auto& [db, vb] : b.t_) c.add_term(da + db, va * vb);
        c.bound_ = combine_bound(a.bound_, b.bound_);
        c.check_bound();
        return c;
    }

    // Division only by a single-term series (a unit of this ring); that covers
    // the integer constants of exp/log and powers of eps.
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
        if (b.t_.size() != 1) throw Error("laurent division requires a single-term divisor");
        const auto& [db, vb] = *b.t_.begin();
        LaurentSeries c;
        for (const auto& [da, va] : a.t_) c.add_term(da - db, va / vb);
        c.bound_ = combine_bound(a.bound_, b.bound_);
        c.check_bound();
        return c;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

    // Substitutes a concrete value for eps; needs field coefficients when
    // negative degrees are present.
    R eval(const R& x) const {
        R acc(0);
        for (const auto& [d, v] : t_) {
            R p(1);
            for (int k = 0; k < (d < 0 ? -d : d); ++k) p = p * x;
            acc = acc + (d < 0 ? v / p : v * p);
        }
        return acc;
    }

private:
    void add_term(int d, const R& v) {
        auto it = t_.find(d);
        if (it == t_.end()) {
            if (!limitweight::is_zero(v)) t_[d] = v;
            return;
        }
        it->second = it->second + v;
        if (limitweight::is_zero(it->second)) t_.erase(it);
    }

    static int combine_bound(int a, int b) { return a == 0 ? b : (b == 0 ? a : (a > b ? a : b)); }

    void check_bound() const {
        if (bound_ == 0 || t_.empty()) return;
        if (min_degree() < -bound_ || max_degree() > bound_) {
            int bad = min_degree() < -bound_ ? min_degree() : max_degree();
            throw DegreeOverflowError(bad, bound_);
        }
    }

    std::map<int, R> t_;
    int bound_ = 0;  // 0 = unchecked
};

}  // namespace limitweight
