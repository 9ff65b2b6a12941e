#pragma once

// Exact scalars: arbitrary-precision rationals, always in lowest terms with a
// positive denominator. Backed by boost::multiprecision with expression
// templates disabled so that generic ring code sees plain value semantics.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace limitweight {

using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Zero test shared by every coefficient ring: all of them compare equal to a
// default-constructed-from-0 value exactly when they vanish.
template <class R>
bool is_zero(const R& x) {
    return x == R(0);
}

// Accepts "p" or "p/q" with an optional sign; q must be nonzero. Unreduced
// input is fine, the value is canonicalized on construction.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw FixtureError("bad rational literal: empty string");
    for (char ch : s) {
        if (!(ch == '-' || ch == '+' || ch == '/' || (ch >= '0' && ch <= '9')))
            throw FixtureError("bad rational literal: \"" + s + "\"");
    }
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw FixtureError("bad rational literal: \"" + s + "\"");
    }
}

// Emits the reduced form, "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& x) { return x.str(); }

}  // namespace limitweight
