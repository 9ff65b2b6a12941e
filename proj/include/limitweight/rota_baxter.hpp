#pragma once

// Relative Rota-Baxter operators whose weight is carried by a limit of
// lower/raise map pairs, on unipotent matrix groups and on Lie algebras given
// by structure constants. The defining identity on the group side is
//
//   B(a) B(b) = B( lim raise( lower(a) . Gamma_{B(a)}(lower(b)) ) )
//
// and the bracket inside the operator on the algebra side is
//
//   [Bu, Bv] = B( lim raise( gamma_{Bu}(lower v) - gamma_{Bv}(lower u)
//                            + [lower u, lower v] ) ).
//
// The combined limit also serves as a product of its own, the descent product,
// which the operator maps homomorphically back into the original group. A
// tangent functor connects the two sides: linearizing a group fixture at the
// unit yields an algebra fixture, with the action linearized through mixed
// partials rather than assumed.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "check.hpp"
#include "errors.hpp"
#include "jet.hpp"
#include "json_io.hpp"
#include "laurent.hpp"
#include "lie.hpp"
#include "map_pair.hpp"
#include "matrix.hpp"
#include "nilpotent.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace limitweight {

enum class GroupActionKind { conjugation, trivial };

struct GroupActionSpec {
    GroupActionKind kind = GroupActionKind::conjugation;
};

// g acts on x; g lives in the original group and is lifted into whatever ring
// x carries (eps families, jets, polynomials).
template <class X, class G>
Matrix<X> group_act(const GroupActionSpec& spec, const Matrix<G>& g, const Matrix<X>& x) {
    if (spec.kind == GroupActionKind::trivial) return x;
    Matrix<X> gl = lift_matrix<X>(g);
    return gl * x * unipotent_inverse(gl);
}

enum class OperatorKind { constant_identity, identity_map, inversion, linear_log, derivation_log };

struct OperatorSpec {
    OperatorKind kind = OperatorKind::constant_identity;
    // linear_log and derivation_log: matrix of the log-level linear map in the
    // strictly-upper coordinate basis
    Matrix<Rational> coeffs;

    static OperatorSpec trivial() { return {OperatorKind::constant_identity, {}}; }
    static OperatorSpec identity_map() { return {OperatorKind::identity_map, {}}; }
    static OperatorSpec inversion() { return {OperatorKind::inversion, {}}; }
    static OperatorSpec linear_log(const Matrix<Rational>& coeffs) {
        return {OperatorKind::linear_log, coeffs};
    }
    // g = exp(u) maps to exp(Du + [u, Du]/2), the flow-style lift of a
    // log-level derivation D
    static OperatorSpec derivation_log(const Matrix<Rational>& coeffs) {
        return {OperatorKind::derivation_log, coeffs};
    }
};

template <class T>
Matrix<T> apply_operator(const OperatorSpec& op, const Matrix<T>& g) {
    auto lift = [](const Rational& c) { return scalar_lift<T>(c); };
    switch (op.kind) {
        case OperatorKind::constant_identity: return Matrix<T>::identity(g.dim());
        case OperatorKind::identity_map: return g;
        case OperatorKind::inversion: return unipotent_inverse(g);
        case OperatorKind::linear_log:
            return mat_exp(apply_linear_on_upper(op.coeffs, mat_log(g), lift));
        default: {
            auto u = mat_log(g);
            auto du = apply_linear_on_upper(op.coeffs, u, lift);
            return mat_exp(du + scalar_lift<T>(Rational(1, 2)) * (u * du - du * u));
        }
    }
}

struct GroupRBFixture {
    std::string name;
    std::size_t dim = 3;
    PairSpec pair;
    GroupActionSpec action;
    OperatorSpec op;
    // declared: lowered elements limit to the unit (rather than merely having
    // a limit)
    bool weight_zero = true;
};

// The combined limit underlying both the defining identity and the descent
// product: lim raise( lower(a) . Gamma_{B(a)}(lower(b)) ).
template <class T>
Matrix<T> descent_mul(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    auto la = pair_lower(fx.pair, eps_lift(a));
    auto lb = pair_lower(fx.pair, eps_lift(b));
    auto ba = apply_operator(fx.op, a);
    return laurent_limit(pair_raise(fx.pair, la * group_act(fx.action, ba, lb)));
}

template <class T>
Matrix<T> descent_inverse(const GroupRBFixture& fx, const Matrix<T>& a) {
    auto la_inv = unipotent_inverse(pair_lower(fx.pair, eps_lift(a)));
    auto ba_inv = unipotent_inverse(apply_operator(fx.op, a));
    return laurent_limit(pair_raise(fx.pair, group_act(fx.action, ba_inv, la_inv)));
}

inline CheckResult check_group_rrb(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "group-rrb", "operator images multiply like the operator of the combined limit", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim);
            auto lhs = apply_operator(fx.op, a) * apply_operator(fx.op, b);
            auto rhs = apply_operator(fx.op, descent_mul(fx, a, b));
            if (lhs == rhs) return std::nullopt;
            return nlohmann::json{{"a", matrix_to_json(a)},
                                  {"b", matrix_to_json(b)},
                                  {"B(a)B(b)", matrix_to_json(lhs)},
                                  {"B(a*b)", matrix_to_json(rhs)}};
        });
}

inline CheckResult check_group_rrb_symbolic(const GroupRBFixture& fx) {
    const std::string name = "group-rrb-symbolic";
    const std::string claim = "the defining identity holds in generic coordinates";
    try {
        auto a = symbolic_unipotent(fx.dim, 0), b = symbolic_unipotent(fx.dim, 1);
        auto names = coordinate_names(fx.dim, 2);
        auto lhs = apply_operator(fx.op, a) * apply_operator(fx.op, b);
        auto rhs = apply_operator(fx.op, descent_mul(fx, a, b));
        if (lhs == rhs) return CheckResult::pass(name, claim);
        return CheckResult::fail(name, claim,
                                 nlohmann::json{{"B(a)B(b)", poly_matrix_to_json(lhs, names)},
                                                {"B(a*b)", poly_matrix_to_json(rhs, names)}});
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// Whether every lowered sample limits to the unit must agree with the
// fixture's declared weight; a missing limit counts as a non-unit outcome.
inline CheckResult check_weight_flag(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "weight-flag", "declared weight matches the limits of lowered elements", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim);
            if (is_zero(mat_log(a))) return std::nullopt;  // the unit is uninformative
            bool limits_to_unit = false;
            try {
                limits_to_unit =
                    laurent_limit(pair_lower(fx.pair, eps_lift(a))) == Matrix<Rational>::identity(fx.dim);
            } catch (const LimitError&) {
            }
            if (limits_to_unit == fx.weight_zero) return std::nullopt;
            return nlohmann::json{{"a", matrix_to_json(a)},
                                  {"declared_weight_zero", fx.weight_zero},
                                  {"lowered_limit_is_unit", limits_to_unit}};
        });
}

// Group laws of the descent product, plus the operator being a homomorphism
// from the descent group back to the original one.
inline CheckResult check_descent_group(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "descent-group", "the combined limit is a group product and the operator respects it", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim), c = s.unipotent(fx.dim);
            auto e = Matrix<Rational>::identity(fx.dim);
            auto lhs = descent_mul(fx, descent_mul(fx, a, b), c);
            auto rhs = descent_mul(fx, a, descent_mul(fx, b, c));
            if (!(lhs == rhs))
                return nlohmann::json{{"law", "associativity"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"(a*b)*c", matrix_to_json(lhs)},
                                      {"a*(b*c)", matrix_to_json(rhs)}};
            if (!(descent_mul(fx, a, e) == a && descent_mul(fx, e, a) == a))
                return nlohmann::json{{"law", "unit"}, {"a", matrix_to_json(a)}};
            auto ai = descent_inverse(fx, a);
            if (!(descent_mul(fx, a, ai) == e && descent_mul(fx, ai, a) == e))
                return nlohmann::json{
                    {"law", "inverse"}, {"a", matrix_to_json(a)}, {"a_inv", matrix_to_json(ai)}};
            auto hom = apply_operator(fx.op, descent_mul(fx, a, b));
            if (!(hom == apply_operator(fx.op, a) * apply_operator(fx.op, b)))
                return nlohmann::json{
                    {"law", "homomorphism"}, {"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}};
            return std::nullopt;
        });
}

inline CheckResult check_descent_group_symbolic(const GroupRBFixture& fx) {
    const std::string name = "descent-group-symbolic";
    const std::string claim = "descent group laws hold identically in generic coordinates";
    try {
        auto a = symbolic_unipotent(fx.dim, 0), b = symbolic_unipotent(fx.dim, 1),
             c = symbolic_unipotent(fx.dim, 2);
        auto names = coordinate_names(fx.dim, 3);
        auto e = Matrix<Polynomial>::identity(fx.dim);
        auto lhs = descent_mul(fx, descent_mul(fx, a, b), c);
        auto rhs = descent_mul(fx, a, descent_mul(fx, b, c));
        if (!(lhs == rhs))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "associativity"},
                                                    {"(a*b)*c", poly_matrix_to_json(lhs, names)},
                                                    {"a*(b*c)", poly_matrix_to_json(rhs, names)}});
        if (!(descent_mul(fx, a, e) == a && descent_mul(fx, e, a) == a))
            return CheckResult::fail(name, claim, nlohmann::json{{"law", "unit"}});
        auto ai = descent_inverse(fx, a);
        if (!(descent_mul(fx, a, ai) == e && descent_mul(fx, ai, a) == e))
            return CheckResult::fail(
                name, claim,
                nlohmann::json{{"law", "inverse"}, {"a_inv", poly_matrix_to_json(ai, names)}});
        return CheckResult::pass(name, claim);
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

struct LieRBFixture {
    std::string name;
    LieAlgebra algebra;
    ScalarPair pair;
    LieActionSpec action;
    // B in the coordinate basis of the algebra
    Matrix<Rational> op;
};

namespace detail {

template <class R>
std::vector<R> apply_coeffs(const Matrix<Rational>& m, const std::vector<R>& v) {
    std::vector<R> out = vec_zero<R>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (is_zero(m(i, j))) continue;
            out[i] = out[i] + scalar_lift<R>(m(i, j)) * v[j];
        }
    return out;
}

}  // namespace detail

// Difference of the two sides of the defining identity at (u, v); empty when
// they agree. Works in exact eps coordinates so the limit is literal.
inline std::optional<std::vector<Rational>> lie_rrb_defect(const LieRBFixture& fx,
                                                           const std::vector<Rational>& u,
                                                           const std::vector<Rational>& v) {
    using L = LaurentSeries<Rational>;
    auto bu = detail::apply_coeffs(fx.op, u);
    auto bv = detail::apply_coeffs(fx.op, v);
    auto lhs = lie_bracket(fx.algebra, bu, bv);

    auto ul = lift_vector<L>(u), vl = lift_vector<L>(v);
    auto low_u = vec_scale(fx.pair.lower, ul), low_v = vec_scale(fx.pair.lower, vl);
    auto inner = vec_add(vec_sub(lie_act(fx.action, fx.algebra, lift_vector<L>(bu), low_v),
                                 lie_act(fx.action, fx.algebra, lift_vector<L>(bv), low_u)),
                         lie_bracket(fx.algebra, low_u, low_v));
    auto raised = vec_scale(fx.pair.raise, inner);
    std::vector<Rational> limit(raised.size(), Rational(0));
    for (std::size_t k = 0; k < raised.size(); ++k) limit[k] = eps_limit_scalar(raised[k]);
    auto rhs = detail::apply_coeffs(fx.op, limit);
    auto defect = vec_sub(lhs, rhs);
    if (vec_is_zero(defect)) return std::nullopt;
    return defect;
}

// The identity is bilinear, so holding on all basis pairs means holding
// everywhere; random vectors are thrown in as a sanity layer on top.
inline CheckResult check_lie_rrb(const LieRBFixture& fx, Sampler& rng, long n) {
    const std::string name = "lie-rrb";
    const std::string claim = "operator brackets match the operator of the combined limit";
    try {
        const std::size_t d = fx.algebra.dim;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d);
                u[i] = Rational(1);
                v[j] = Rational(1);
                if (auto defect = lie_rrb_defect(fx, u, v)) {
                    nlohmann::json w{{"basis_pair", {i + 1, j + 1}}};
                    for (std::size_t k = 0; k < d; ++k)
                        w["defect"].push_back(to_string((*defect)[k]));
                    return CheckResult::fail(name, claim, w);
                }
            }
        for (long round = 0; round < n; ++round) {
            std::vector<Rational> u, v;
            for (std::size_t k = 0; k < d; ++k) {
                u.push_back(rng.rational());
                v.push_back(rng.rational());
            }
            if (auto defect = lie_rrb_defect(fx, u, v)) {
                nlohmann::json w;
                for (std::size_t k = 0; k < d; ++k) {
                    w["u"].push_back(to_string(u[k]));
                    w["v"].push_back(to_string(v[k]));
                    w["defect"].push_back(to_string((*defect)[k]));
                }
                return CheckResult::fail(name, claim, w);
            }
        }
        auto r = CheckResult::pass(name, claim);
        r.samples = n;
        return r;
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

namespace detail {

// Columns of the linearization of a group-level map at the unit, in the
// strictly-upper coordinate basis.
inline Matrix<Rational> operator_tangent(const OperatorSpec& op, std::size_t matrix_dim) {
    const std::size_t d = strictly_upper_positions(matrix_dim).size();
    Matrix<Rational> out(d);
    for (std::size_t j = 0; j < d; ++j) {
        auto ej = vec_zero<Rational>(d);
        ej[j] = Rational(1);
        auto col = upper_coords(first_jet([&](const auto& g) { return apply_operator(op, g); },
                                          from_upper_coords(matrix_dim, ej)));
        for (std::size_t i = 0; i < d; ++i) out(i, j) = col[i];
    }
    return out;
}

// Mixed partials of the acting word in both slots give the bilinear action
// table, rather than assuming the tangent action is adjoint.
inline LieActionSpec action_tangent(const GroupActionSpec& action, std::size_t matrix_dim) {
    const std::size_t d = strictly_upper_positions(matrix_dim).size();
    LieActionSpec spec;
    spec.kind = LieActionKind::linear;
    spec.coeffs.assign(d, std::vector<std::vector<Rational>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto ei = vec_zero<Rational>(d), ej = vec_zero<Rational>(d);
            ei[i] = Rational(1);
            ej[j] = Rational(1);
            spec.coeffs[i][j] = upper_coords(
                mixed_partial([&](const auto& g, const auto& x) { return group_act(action, g, x); },
                              from_upper_coords(matrix_dim, ei), from_upper_coords(matrix_dim, ej)));
        }
    return spec;
}

inline ScalarPair pair_tangent(const PairSpec& p) {
    switch (p.kind) {
        case PairKind::power: return ScalarPair::power();
        case PairKind::identity: return ScalarPair::identity();
        default: return ScalarPair::make(p.lower_scale, p.raise_scale);
    }
}

}  // namespace detail

// Linearization of a group fixture at the unit. The operator tangent comes
// from first-order jets, the action tangent from mixed partials of the acting
// word, and the pair tangent from the scale each pair applies to a log.
inline LieRBFixture rb_group_tangent(const GroupRBFixture& fx) {
    LieRBFixture t;
    t.name = fx.name + "-tangent";
    t.algebra = LieAlgebra::from_strictly_upper(fx.dim);
    t.op = detail::operator_tangent(fx.op, fx.dim);
    t.action = detail::action_tangent(fx.action, fx.dim);
    t.pair = detail::pair_tangent(fx.pair);
    return t;
}

// Exhaustive search over integer matrices with entries in [-bound, bound] for
// operators satisfying the bracket identity with the given pair and action.
// Bilinearity makes basis pairs a complete certificate.
inline std::vector<Matrix<Rational>> search_lie_rrb_operators(const LieAlgebra& g,
                                                              const ScalarPair& pair,
                                                              const LieActionSpec& action,
                                                              long bound) {
    const std::size_t d = g.dim;
    const std::size_t cells = d * d;
    const long width = 2 * bound + 1;
    std::vector<Matrix<Rational>> found;
    std::vector<long> digits(cells, 0);
    bool done = false;
    while (!done) {
        LieRBFixture cand;
        cand.algebra = g;
        cand.pair = pair;
        cand.action = action;
        cand.op = Matrix<Rational>(d);
        for (std::size_t c = 0; c < cells; ++c) cand.op(c / d, c % d) = Rational(digits[c] - bound);
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i)
            for (std::size_t j = i + 1; j < d && ok; ++j) {
                auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d);
                u[i] = Rational(1);
                v[j] = Rational(1);
                if (lie_rrb_defect(cand, u, v)) ok = false;
            }
        if (ok) found.push_back(cand.op);
        std::size_t c = 0;
        while (c < cells) {
            if (++digits[c] < width) break;
            digits[c] = 0;
            ++c;
        }
        done = (c == cells);
    }
    return found;
}

}  // namespace limitweight
