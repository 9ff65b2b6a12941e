#pragma once

// The exact kernel: exp, log, inverse and scalar powers on nilpotent and
// unipotent matrices, eps-limits, and jet-based tangent extraction. All series
// terminate (powers are checked to vanish by the matrix dimension), so every
// function here is a finite exact computation in whatever coefficient ring the
// matrix carries: rationals, polynomials, Laurent series in eps, jets, or any
// nesting of those.

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>

#include "jet.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace limitweight {

template <class T>
struct is_laurent : std::false_type {};
template <class R>
struct is_laurent<LaurentSeries<R>> : std::true_type {};

template <class T>
struct is_jet : std::false_type {};
template <class R>
struct is_jet<Jet<R>> : std::true_type {};

// Embeds one coefficient ring into a richer one (rational -> polynomial,
// anything -> its Laurent or jet extension, component-wise across matching
// structure). scalar_lift<S>(x) names the target ring explicitly.
template <class S, class R>
S scalar_lift(const R& x) {
    if constexpr (std::is_same_v<S, R>) {
        return x;
    } else if constexpr (is_jet<S>::value) {
        using C = typename S::coeff_type;
        if constexpr (is_jet<R>::value)
            return S(scalar_lift<C>(x.val()), scalar_lift<C>(x.dt()), scalar_lift<C>(x.ds()),
                     scalar_lift<C>(x.dtds()));
        else
            return S(scalar_lift<C>(x));
    } else if constexpr (is_laurent<S>::value) {
        using C = typename S::coeff_type;
        if constexpr (is_laurent<R>::value) {
            S out;
            for (const auto& [d, v] : x.terms()) out = out + S::term(scalar_lift<C>(v), d);
            out.with_bound(x.bound());
            return out;
        } else {
            return S(scalar_lift<C>(x));
        }
    } else {
        return S(x);
    }
}

template <class S, class R>
Matrix<S> lift_matrix(const Matrix<R>& m) {
    return map_entries(m, [](const R& x) { return scalar_lift<S>(x); });
}

// The eps element of a ring that has one (a Laurent ring or a jet over one).
template <class S>
S eps_in(int degree = 1) {
    static_assert(is_laurent<S>::value || is_jet<S>::value, "ring has no eps");
    if constexpr (is_laurent<S>::value)
        return S::eps(degree);
    else
        return S(eps_in<typename S::coeff_type>(degree));
}

// Degree window that is provably sufficient for legitimate computations on a
// nilpotent carrier of this dimension; see LaurentSeries for the contract.
inline int eps_degree_bound(std::size_t dim) {
    return static_cast<int>(dim * (dim == 0 ? 0 : dim - 1));
}

template <class S>
S with_eps_bound_scalar(const S& x, int b) {
    if constexpr (is_laurent<S>::value) {
        S y = x;
        y.with_bound(b);
        return y;
    } else if constexpr (is_jet<S>::value) {
        return S(with_eps_bound_scalar(x.val(), b), with_eps_bound_scalar(x.dt(), b),
                 with_eps_bound_scalar(x.ds(), b), with_eps_bound_scalar(x.dtds(), b));
    } else {
        return x;
    }
}

template <class S>
Matrix<S> with_eps_bound(const Matrix<S>& m, int b) {
    return map_entries(m, [b](const S& x) { return with_eps_bound_scalar(x, b); });
}

template <class R>
Matrix<R> scalar_div(const Matrix<R>& m, long k) {
    return map_entries(m, [&](const R& x) { return x / R(k); });
}

// Least k >= 1 with m^k = 0; throws if m is not nilpotent.
template <class R>
std::size_t nil_index(const Matrix<R>& m) {
    Matrix<R> p = m;
    for (std::size_t k = 1; k <= m.dim(); ++k) {
        if (is_zero(p)) return k;
        p = p * m;
    }
    throw NotNilpotentError("power " + std::to_string(m.dim()) + " does not vanish");
}

template <class R>
Matrix<R> mat_exp(const Matrix<R>& n) {
    const std::size_t d = n.dim();
    Matrix<R> acc = Matrix<R>::identity(d);
    Matrix<R> term = Matrix<R>::identity(d);
    for (std::size_t k = 1; k <= d; ++k) {
        term = scalar_div(term * n, static_cast<long>(k));
        if (is_zero(term)) return acc;
        acc += term;
    }
    throw NotNilpotentError("power " + std::to_string(d) + " does not vanish");
}

template <class R>
Matrix<R> mat_log(const Matrix<R>& u) {
    const std::size_t d = u.dim();
    const Matrix<R> n = u - Matrix<R>::identity(d);
    Matrix<R> acc(d);
    Matrix<R> p = Matrix<R>::identity(d);
    for (std::size_t k = 1; k <= d; ++k) {
        p = p * n;
        if (is_zero(p)) return acc;
        Matrix<R> term = scalar_div(p, static_cast<long>(k));
        acc += (k % 2 == 1) ? term : -term;
    }
    throw NotUnipotentError("u - 1 is not nilpotent");
}

template <class R>
Matrix<R> unipotent_inverse(const Matrix<R>& u) {
    const std::size_t d = u.dim();
    const Matrix<R> n = Matrix<R>::identity(d) - u;
    Matrix<R> acc = Matrix<R>::identity(d);
    Matrix<R> p = Matrix<R>::identity(d);
    for (std::size_t k = 1; k <= d; ++k) {
        p = p * n;
        if (is_zero(p)) return acc;
        acc += p;
    }
    throw NotUnipotentError("1 - u is not nilpotent");
}

// u^s = exp(s log u) for an arbitrary ring scalar s; with s = eps or 1/eps
// these are the power-pair maps, with integer s the ordinary group power.
template <class R>
Matrix<R> unipotent_power(const Matrix<R>& u, const R& s) {
    return mat_exp(map_entries(mat_log(u), [&](const R& x) { return s * x; }));
}

template <class R>
Matrix<R> unipotent_power(const Matrix<R>& u, long k) {
    return unipotent_power(u, R(k));
}

template <class R>
R eps_limit_scalar(const LaurentSeries<R>& s) {
    return s.limit();
}

template <class L>
auto eps_limit_scalar(const Jet<L>& j) {
    using T = decltype(eps_limit_scalar(j.val()));
    return Jet<T>(eps_limit_scalar(j.val()), eps_limit_scalar(j.dt()), eps_limit_scalar(j.ds()),
                  eps_limit_scalar(j.dtds()));
}

// Entry-wise family limit of an eps matrix; the error names the entry whose
// negative degree survived.
template <class S>
auto laurent_limit(const Matrix<S>& m) {
    using T = decltype(eps_limit_scalar(std::declval<const S&>()));
    Matrix<T> out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) {
            try {
                out(i, j) = eps_limit_scalar(m(i, j));
            } catch (const LimitError& e) {
                throw LimitError(e.degree, "entry (" + std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + ") has eps degree " +
                                               std::to_string(e.degree));
            }
        }
    return out;
}

namespace detail {

// Accepts words valued in plain jets or in jets over eps; the latter are
// limited first so tangents of limit operations come out exact.
template <class SE, class R>
Matrix<Jet<R>> strip_eps(const Matrix<SE>& m) {
    if constexpr (is_laurent<typename SE::coeff_type>::value)
        return laurent_limit(m);
    else
        return m;
}

}  // namespace detail

// Mixed second derivative at the identity: the ts component of
// log f(exp(t u), exp(s v)). f is any binary word in matrices over Jet<R>
// (or Jet<LaurentSeries<R>>, when the word involves limit operations).
template <class R, class F>
Matrix<R> mixed_partial(F&& f, const Matrix<R>& u, const Matrix<R>& v) {
    using J = Jet<R>;
    Matrix<J> a = mat_exp(map_entries(u, [](const R& x) { return J::t(x); }));
    Matrix<J> b = mat_exp(map_entries(v, [](const R& x) { return J::s(x); }));
    auto res = std::forward<F>(f)(a, b);
    using SE = std::decay_t<decltype(res(0, 0))>;
    Matrix<J> plain = detail::strip_eps<SE, R>(res);
    Matrix<J> lg;
    try {
        lg = mat_log(plain);
    } catch (const NotUnipotentError&) {
        throw TangentUndefinedError("word does not stay unipotent");
    }
    return map_entries(lg, [](const J& j) { return j.dtds(); });
}

// One-direction tangent: the t component of log f(exp(t u)).
template <class R, class F>
Matrix<R> first_jet(F&& f, const Matrix<R>& u) {
    using J = Jet<R>;
    Matrix<J> a = mat_exp(map_entries(u, [](const R& x) { return J::t(x); }));
    auto res = std::forward<F>(f)(a);
    using SE = std::decay_t<decltype(res(0, 0))>;
    Matrix<J> plain = detail::strip_eps<SE, R>(res);
    Matrix<J> lg;
    try {
        lg = mat_log(plain);
    } catch (const NotUnipotentError&) {
        throw TangentUndefinedError("word does not stay unipotent");
    }
    return map_entries(lg, [](const J& j) { return j.dt(); });
}

}  // namespace limitweight
