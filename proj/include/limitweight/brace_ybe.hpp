#pragma once

// Skew brace structure carried by an operator fixture, and the induced
// set-theoretic Yang-Baxter map. The two brace products are the transported
// product (bullet) and the descent product (circle); the compatibility law is
//
//   a o (b . c) = (a o b) . a^- . (a o c)
//
// with a^- the bullet inverse. The Yang-Baxter map sends (a, b) to
// (Omega_a(b), Omega_c^{-1}(x^- . a . x)) where c = Omega_a(b), x = a o b and
// Omega_a(b) = a^- . (a o b). A closed route for the second component pushes
// the bullet conjugation down to lowered families; both routes are computed
// and compared. The explicit inverse solves c = Omega_a(b) and a o b = c o d
// for (a, b), which also certifies bijectivity.

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "check.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "laurent.hpp"
#include "map_pair.hpp"
#include "matrix.hpp"
#include "nilpotent.hpp"
#include "polynomial.hpp"
#include "post_pre.hpp"
#include "rational.hpp"
#include "rota_baxter.hpp"

namespace limitweight {

template <class T>
Matrix<T> brace_dot(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    return transported_mul(fx.pair, a, b);
}

template <class T>
Matrix<T> brace_dot_inverse(const GroupRBFixture& fx, const Matrix<T>& a) {
    return transported_inverse(fx.pair, a);
}

template <class T>
Matrix<T> brace_circ(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    return descent_mul(fx, a, b);
}

template <class T>
Matrix<T> brace_circ_inverse(const GroupRBFixture& fx, const Matrix<T>& a) {
    return descent_inverse(fx, a);
}

template <class T>
Matrix<T> omega(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    return brace_dot(fx, brace_dot_inverse(fx, a), brace_circ(fx, a, b));
}

// Omega_a^{-1}(b) = a^dagger o (a . b)
template <class T>
Matrix<T> omega_inverse_apply(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    return brace_circ(fx, brace_circ_inverse(fx, a), brace_dot(fx, a, b));
}

template <class T>
std::pair<Matrix<T>, Matrix<T>> ybe_map(const GroupRBFixture& fx, const Matrix<T>& a,
                                        const Matrix<T>& b) {
    auto c = omega(fx, a, b);
    auto x = brace_circ(fx, a, b);
    auto conj = brace_dot(fx, brace_dot(fx, brace_dot_inverse(fx, x), a), x);
    return {c, omega_inverse_apply(fx, c, conj)};
}

// Second component evaluated in one pass over eps families: the bullet
// conjugation by a o b collapses to conjugation by the eps-level word
// C = Gamma_{B(a)}(lower(b)), and the outer Omega inverse becomes the action
// of B(c)^{-1}.
template <class T>
Matrix<T> ybe_second_closed(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    auto c = omega(fx, a, b);
    auto conj = group_act(fx.action, apply_operator(fx.op, a), pair_lower(fx.pair, eps_lift(b)));
    auto inner = unipotent_inverse(conj) * pair_lower(fx.pair, eps_lift(a)) * conj;
    auto bc_inv = unipotent_inverse(apply_operator(fx.op, c));
    return laurent_limit(pair_raise(fx.pair, group_act(fx.action, bc_inv, inner)));
}

// Solves S(a, b) = (c, d): the circle products agree, a o b = c o d, which
// pins a = (c o d) . c^-, and then b = Omega_a^{-1}(c).
template <class T>
std::pair<Matrix<T>, Matrix<T>> ybe_inverse(const GroupRBFixture& fx, const Matrix<T>& c,
                                            const Matrix<T>& d) {
    auto a = brace_dot(fx, brace_circ(fx, c, d), brace_dot_inverse(fx, c));
    return {a, omega_inverse_apply(fx, a, c)};
}

inline CheckResult check_brace(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "skew-brace", "both products are associative and circle distributes through the bullet",
        rng, n, [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim), c = s.unipotent(fx.dim);
            auto lhs = brace_circ(fx, a, brace_dot(fx, b, c));
            auto rhs = brace_dot(fx, brace_circ(fx, a, b),
                                 brace_dot(fx, brace_dot_inverse(fx, a), brace_circ(fx, a, c)));
            if (!(lhs == rhs))
                return nlohmann::json{{"law", "compatibility"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"lhs", matrix_to_json(lhs)},
                                      {"rhs", matrix_to_json(rhs)}};
            auto al = brace_circ(fx, brace_circ(fx, a, b), c);
            auto ar = brace_circ(fx, a, brace_circ(fx, b, c));
            if (!(al == ar))
                return nlohmann::json{{"law", "circle-associativity"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"lhs", matrix_to_json(al)},
                                      {"rhs", matrix_to_json(ar)}};
            return std::nullopt;
        });
}

inline CheckResult check_brace_symbolic(const GroupRBFixture& fx) {
    const std::string name = "skew-brace-symbolic";
    const std::string claim = "the brace laws hold identically in generic coordinates";
    try {
        auto a = symbolic_unipotent(fx.dim, 0), b = symbolic_unipotent(fx.dim, 1),
             c = symbolic_unipotent(fx.dim, 2);
        auto names = coordinate_names(fx.dim, 3);
        auto lhs = brace_circ(fx, a, brace_dot(fx, b, c));
        auto rhs = brace_dot(fx, brace_circ(fx, a, b),
                             brace_dot(fx, brace_dot_inverse(fx, a), brace_circ(fx, a, c)));
        if (!(lhs == rhs))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "compatibility"},
                                                    {"lhs", poly_matrix_to_json(lhs, names)},
                                                    {"rhs", poly_matrix_to_json(rhs, names)}});
        auto al = brace_circ(fx, brace_circ(fx, a, b), c);
        auto ar = brace_circ(fx, a, brace_circ(fx, b, c));
        if (!(al == ar))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "circle-associativity"},
                                                    {"lhs", poly_matrix_to_json(al, names)},
                                                    {"rhs", poly_matrix_to_json(ar, names)}});
        return CheckResult::pass(name, claim);
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

inline CheckResult check_omega(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "omega", "Omega inverts pointwise and is a bullet homomorphism in its argument", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim), c = s.unipotent(fx.dim);
            if (!(omega_inverse_apply(fx, a, omega(fx, a, b)) == b &&
                  omega(fx, a, omega_inverse_apply(fx, a, b)) == b))
                return nlohmann::json{{"law", "inverse"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)}};
            auto lhs = omega(fx, a, brace_dot(fx, b, c));
            auto rhs = brace_dot(fx, omega(fx, a, b), omega(fx, a, c));
            if (!(lhs == rhs))
                return nlohmann::json{{"law", "bullet-homomorphism"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)}};
            // Omega from the circle viewpoint is the operator action triangle
            if (!(omega(fx, a, b) == rb_triangle(fx, a, b)))
                return nlohmann::json{{"law", "action-form"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)}};
            return std::nullopt;
        });
}

inline CheckResult check_ybe_routes(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "ybe-routes", "the brace route and the lowered-conjugator route agree", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim);
            auto [c, d] = ybe_map(fx, a, b);
            auto d2 = ybe_second_closed(fx, a, b);
            if (d == d2) return std::nullopt;
            return nlohmann::json{{"a", matrix_to_json(a)},
                                  {"b", matrix_to_json(b)},
                                  {"c", matrix_to_json(c)},
                                  {"brace_route", matrix_to_json(d)},
                                  {"closed_route", matrix_to_json(d2)}};
        });
}

inline CheckResult check_ybe_inverse(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "ybe-inverse", "the constructed inverse undoes the map in both orders", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim);
            auto [c, d] = ybe_map(fx, a, b);
            auto [a2, b2] = ybe_inverse(fx, c, d);
            if (!(a2 == a && b2 == b))
                return nlohmann::json{{"order", "inverse-after-map"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"a_back", matrix_to_json(a2)},
                                      {"b_back", matrix_to_json(b2)}};
            auto [x, y] = ybe_inverse(fx, a, b);
            auto [a3, b3] = ybe_map(fx, x, y);
            if (!(a3 == a && b3 == b))
                return nlohmann::json{{"order", "map-after-inverse"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)}};
            return std::nullopt;
        });
}

namespace detail {

template <class T>
using Triple = std::tuple<Matrix<T>, Matrix<T>, Matrix<T>>;

template <class T>
Triple<T> ybe_12(const GroupRBFixture& fx, const Triple<T>& t) {
    auto [a, b] = ybe_map(fx, std::get<0>(t), std::get<1>(t));
    return {a, b, std::get<2>(t)};
}

template <class T>
Triple<T> ybe_23(const GroupRBFixture& fx, const Triple<T>& t) {
    auto [b, c] = ybe_map(fx, std::get<1>(t), std::get<2>(t));
    return {std::get<0>(t), b, c};
}

}  // namespace detail

template <class T>
bool braid_holds(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b,
                 const Matrix<T>& c) {
    detail::Triple<T> t{a, b, c};
    auto lhs = detail::ybe_12(fx, detail::ybe_23(fx, detail::ybe_12(fx, t)));
    auto rhs = detail::ybe_23(fx, detail::ybe_12(fx, detail::ybe_23(fx, t)));
    return std::get<0>(lhs) == std::get<0>(rhs) && std::get<1>(lhs) == std::get<1>(rhs) &&
           std::get<2>(lhs) == std::get<2>(rhs);
}

inline CheckResult check_braid(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "braid", "both bracketings of the double swap coincide on triples", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim), c = s.unipotent(fx.dim);
            if (braid_holds(fx, a, b, c)) return std::nullopt;
            return nlohmann::json{{"a", matrix_to_json(a)},
                                  {"b", matrix_to_json(b)},
                                  {"c", matrix_to_json(c)}};
        });
}

inline CheckResult check_braid_symbolic(const GroupRBFixture& fx) {
    const std::string name = "braid-symbolic";
    const std::string claim = "the braid relation holds identically in generic coordinates";
    try {
        auto a = symbolic_unipotent(fx.dim, 0), b = symbolic_unipotent(fx.dim, 1),
             c = symbolic_unipotent(fx.dim, 2);
        if (braid_holds(fx, a, b, c)) return CheckResult::pass(name, claim);
        return CheckResult::fail(name, claim, nlohmann::json{{"note", "sides differ"}});
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

}  // namespace limitweight
