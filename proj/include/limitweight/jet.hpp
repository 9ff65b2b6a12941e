#pragma once

// First-order jets in two directions t and s, with t^2 = s^2 = 0. A value is
// a + t b + s c + ts d. Matrices over this ring turn mixed second derivatives
// of group words at the identity into exact reads of the ts component; note
// exp(t u) is just I + t u here, so group-word jets stay small.

#include "errors.hpp"
#include "rational.hpp"

namespace limitweight {

template <class R>
class Jet {
public:
    using coeff_type = R;

    Jet() : v_{R(0), R(0), R(0), R(0)} {}
    explicit Jet(long c) : Jet(R(c)) {}
    explicit Jet(const R& c) : v_{c, R(0), R(0), R(0)} {}
    Jet(const R& val, const R& dt, const R& ds, const R& dtds) : v_{val, dt, ds, dtds} {}

    static Jet t(const R& c = R(1)) { return Jet(R(0), c, R(0), R(0)); }
    static Jet s(const R& c = R(1)) { return Jet(R(0), R(0), c, R(0)); }

    const R& val() const { return v_[0]; }
    const R& dt() const { return v_[1]; }
    const R& ds() const { return v_[2]; }
    const R& dtds() const { return v_[3]; }

    friend Jet operator+(const Jet& a, const Jet& b) {
        return Jet(a.v_[0] + b.v_[0], a.v_[1] + b.v_[1], a.v_[2] + b.v_[2], a.v_[3] + b.v_[3]);
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        return Jet(a.v_[0] - b.v_[0], a.v_[1] - b.v_[1], a.v_[2] - b.v_[2], a.v_[3] - b.v_[3]);
    }
    friend Jet operator-(const Jet& a) { return Jet(-a.v_[0], -a.v_[1], -a.v_[2], -a.v_[3]); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        return Jet(a.v_[0] * b.v_[0],
                   a.v_[0] * b.v_[1] + a.v_[1] * b.v_[0],
                   a.v_[0] * b.v_[2] + a.v_[2] * b.v_[0],
                   a.v_[0] * b.v_[3] + a.v_[3] * b.v_[0] + a.v_[1] * b.v_[2] + a.v_[2] * b.v_[1]);
    }

    // Division by a purely constant jet is all the series kernels need.
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (!(limitweight::is_zero(b.v_[1]) && limitweight::is_zero(b.v_[2]) && limitweight::is_zero(b.v_[3])))
            throw Error("jet division requires a constant divisor");
        return Jet(a.v_[0] / b.v_[0], a.v_[1] / b.v_[0], a.v_[2] / b.v_[0], a.v_[3] / b.v_[0]);
    }

    friend bool operator==(const Jet& a, const Jet& b) {
        return a.v_[0] == b.v_[0] && a.v_[1] == b.v_[1] && a.v_[2] == b.v_[2] && a.v_[3] == b.v_[3];
    }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

private:
    R v_[4];
};

}  // namespace limitweight
