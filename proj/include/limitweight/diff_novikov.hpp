#pragma once

// Relative differential operators whose weight is carried by a limit of
// lower/raise pairs, and the Novikov structures they induce. The group-side
// identity is
//
//   D(a b) = lim raise( lower(D a) . Gamma_a(lower(D b)) ),
//
// with the action indexed by the element itself rather than by its operator
// image. Dropping the leading factor yields a product of its own,
//
//   a (.) b = lim raise( Gamma_a(lower(D b)) ),
//
// which absorbs the unit on the right, distributes over the original product
// through the transported one, and shifts along the limit action; the
// operator comes back as D(a) = e (.) a. On the algebra side the identity is
//
//   D[u, v] = lim raise( gamma_u(lower(D v)) - gamma_v(lower(D u))
//                        + [lower(D u), lower(D v)] )
//
// and the induced product u o v = lim raise(gamma_u(lower(D v))) satisfies
// two derivation-flavoured axioms against the limit action, provided the
// carrier is limit-abelian. Tangents of group fixtures land on algebra
// fixtures, and the two product constructions commute with taking tangents.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "check.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "laurent.hpp"
#include "lie.hpp"
#include "map_pair.hpp"
#include "matrix.hpp"
#include "nilpotent.hpp"
#include "polynomial.hpp"
#include "post_pre.hpp"
#include "rational.hpp"
#include "rota_baxter.hpp"

namespace limitweight {

struct GroupDiffFixture {
    std::string name;
    std::size_t dim = 3;
    PairSpec pair;
    GroupActionSpec action;
    OperatorSpec op;
};

// Right-hand side of the defining identity at (a, b).
template <class T>
Matrix<T> group_diff_rhs(const GroupDiffFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    auto da = pair_lower(fx.pair, eps_lift(apply_operator(fx.op, a)));
    auto db = pair_lower(fx.pair, eps_lift(apply_operator(fx.op, b)));
    return laurent_limit(pair_raise(fx.pair, da * group_act(fx.action, a, db)));
}

inline CheckResult check_group_rdiff(const GroupDiffFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "group-rdiff", "operator values on products match the acted product of values", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto e = Matrix<Rational>::identity(fx.dim);
            if (!(apply_operator(fx.op, e) == e))
                return nlohmann::json{{"law", "unit-fixed"},
                                      {"D(e)", matrix_to_json(apply_operator(fx.op, e))}};
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim);
            auto lhs = apply_operator(fx.op, a * b);
            auto rhs = group_diff_rhs(fx, a, b);
            if (lhs == rhs) return std::nullopt;
            return nlohmann::json{{"law", "crossed-homomorphism"},
                                  {"a", matrix_to_json(a)},
                                  {"b", matrix_to_json(b)},
                                  {"D(ab)", matrix_to_json(lhs)},
                                  {"acted", matrix_to_json(rhs)}};
        });
}

inline CheckResult check_group_rdiff_symbolic(const GroupDiffFixture& fx) {
    const std::string name = "group-rdiff-symbolic";
    const std::string claim = "the defining identity holds in generic coordinates";
    try {
        auto a = symbolic_unipotent(fx.dim, 0), b = symbolic_unipotent(fx.dim, 1);
        auto names = coordinate_names(fx.dim, 2);
        auto lhs = apply_operator(fx.op, a * b);
        auto rhs = group_diff_rhs(fx, a, b);
        if (lhs == rhs) return CheckResult::pass(name, claim);
        return CheckResult::fail(name, claim,
                                 nlohmann::json{{"D(ab)", poly_matrix_to_json(lhs, names)},
                                                {"acted", poly_matrix_to_json(rhs, names)}});
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// The induced product a (.) b = lim raise(Gamma_a(lower(D b))).
template <class T>
Matrix<T> novikov_mul(const GroupDiffFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    auto db = pair_lower(fx.pair, eps_lift(apply_operator(fx.op, b)));
    return laurent_limit(pair_raise(fx.pair, group_act(fx.action, a, db)));
}

// Axioms checked against any concrete product, so that fixture-derived
// products and externally supplied candidates share one path. The carrier
// hypothesis (transported commutativity) is part of the check.
template <class F>
CheckResult check_novikov_laws(const PairSpec& pair, const GroupActionSpec& action, std::size_t dim,
                               F&& mul, Sampler& rng, long n) {
    return sampled_check(
        "novikov-group", "unit absorption, weighted distributivity and the action shift hold", rng,
        n, [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(dim), b = s.unipotent(dim), c = s.unipotent(dim);
            auto e = Matrix<Rational>::identity(dim);
            if (!(transported_mul(pair, a, b) == transported_mul(pair, b, a)))
                return nlohmann::json{
                    {"law", "limit-abelian"}, {"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}};
            if (!(mul(a, e) == e))
                return nlohmann::json{{"law", "unit-absorbs"},
                                      {"a", matrix_to_json(a)},
                                      {"a.e", matrix_to_json(mul(a, e))}};
            auto lhs = mul(a, b * c);
            auto rhs = transported_mul(pair, mul(a, b), mul(a * b, c));
            if (!(lhs == rhs))
                return nlohmann::json{{"law", "weighted-distributivity"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"lhs", matrix_to_json(lhs)},
                                      {"rhs", matrix_to_json(rhs)}};
            auto bc = mul(b, c);
            auto shifted = laurent_limit(
                pair_raise(pair, group_act(action, a, pair_lower(pair, eps_lift(bc)))));
            auto direct = mul(a * b, c);
            if (!(shifted == direct))
                return nlohmann::json{{"law", "action-shift"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"acted", matrix_to_json(shifted)},
                                      {"direct", matrix_to_json(direct)}};
            return std::nullopt;
        });
}

inline CheckResult check_novikov_group(const GroupDiffFixture& fx, Sampler& rng, long n) {
    return check_novikov_laws(
        fx.pair, fx.action, fx.dim,
        [&](const Matrix<Rational>& a, const Matrix<Rational>& b) { return novikov_mul(fx, a, b); },
        rng, n);
}

inline CheckResult check_novikov_group_symbolic(const GroupDiffFixture& fx) {
    const std::string name = "novikov-group-symbolic";
    const std::string claim = "the product axioms hold identically in generic coordinates";
    try {
        auto a = symbolic_unipotent(fx.dim, 0), b = symbolic_unipotent(fx.dim, 1),
             c = symbolic_unipotent(fx.dim, 2);
        auto names = coordinate_names(fx.dim, 3);
        auto e = Matrix<Polynomial>::identity(fx.dim);
        if (!(novikov_mul(fx, a, e) == e))
            return CheckResult::fail(name, claim, nlohmann::json{{"law", "unit-absorbs"}});
        auto lhs = novikov_mul(fx, a, b * c);
        auto rhs = transported_mul(fx.pair, novikov_mul(fx, a, b), novikov_mul(fx, a * b, c));
        if (!(lhs == rhs))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "weighted-distributivity"},
                                                    {"lhs", poly_matrix_to_json(lhs, names)},
                                                    {"rhs", poly_matrix_to_json(rhs, names)}});
        auto bc = novikov_mul(fx, b, c);
        auto shifted = laurent_limit(
            pair_raise(fx.pair, group_act(fx.action, a, pair_lower(fx.pair, eps_lift(bc)))));
        auto direct = novikov_mul(fx, a * b, c);
        if (!(shifted == direct))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "action-shift"},
                                                    {"acted", poly_matrix_to_json(shifted, names)},
                                                    {"direct", poly_matrix_to_json(direct, names)}});
        return CheckResult::pass(name, claim);
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// A product given as data rather than derived from an operator; the source of
// candidates for the reverse construction.
struct NovikovGroupProduct {
    std::string name;
    std::size_t dim = 3;
    PairSpec pair;
    GroupActionSpec action;
    std::function<Matrix<Rational>(const Matrix<Rational>&, const Matrix<Rational>&)> mul;
};

inline NovikovGroupProduct novikov_product(const GroupDiffFixture& fx) {
    NovikovGroupProduct np;
    np.name = fx.name + "-novikov";
    np.dim = fx.dim;
    np.pair = fx.pair;
    np.action = fx.action;
    np.mul = [fx](const Matrix<Rational>& a, const Matrix<Rational>& b) {
        return novikov_mul(fx, a, b);
    };
    return np;
}

inline CheckResult check_novikov_product(const NovikovGroupProduct& np, Sampler& rng, long n) {
    return check_novikov_laws(np.pair, np.action, np.dim, np.mul, rng, n);
}

// Recovers the operator D(a) = e (.) a after gating on the axioms; products
// that fail them are refused rather than silently converted.
inline std::function<Matrix<Rational>(const Matrix<Rational>&)> diff_from_novikov(
    const NovikovGroupProduct& np, Sampler& rng, long gate_samples) {
    auto gate = check_novikov_product(np, rng, gate_samples);
    if (!gate.ok())
        throw FixtureError("product fails the novikov axioms (law: " +
                           gate.witness.value("law", "unknown") + ")");
    auto e = Matrix<Rational>::identity(np.dim);
    return [np, e](const Matrix<Rational>& a) { return np.mul(e, a); };
}

// The product rebuilt from a plain operator map; closes the round trip with
// diff_from_novikov.
inline Matrix<Rational> novikov_mul_map(
    const PairSpec& pair, const GroupActionSpec& action,
    const std::function<Matrix<Rational>(const Matrix<Rational>&)>& d, const Matrix<Rational>& a,
    const Matrix<Rational>& b) {
    auto db = pair_lower(pair, eps_lift(d(b)));
    return laurent_limit(pair_raise(pair, group_act(action, a, db)));
}

// The defining identity for an operator given as a map.
inline CheckResult check_rdiff_map(const PairSpec& pair, const GroupActionSpec& action,
                                   std::size_t dim,
                                   const std::function<Matrix<Rational>(const Matrix<Rational>&)>& d,
                                   Sampler& rng, long n) {
    return sampled_check(
        "rdiff-map", "the recovered operator satisfies the defining identity", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(dim), b = s.unipotent(dim);
            auto da = pair_lower(pair, eps_lift(d(a)));
            auto db = pair_lower(pair, eps_lift(d(b)));
            auto rhs = laurent_limit(pair_raise(pair, da * group_act(action, a, db)));
            auto lhs = d(a * b);
            if (lhs == rhs) return std::nullopt;
            return nlohmann::json{{"a", matrix_to_json(a)},
                                  {"b", matrix_to_json(b)},
                                  {"D(ab)", matrix_to_json(lhs)},
                                  {"acted", matrix_to_json(rhs)}};
        });
}

struct LieDiffFixture {
    std::string name;
    LieAlgebra algebra;
    ScalarPair pair;
    LieActionSpec action;
    // D in the coordinate basis of the algebra
    Matrix<Rational> op;
};

// Difference of the two sides of the defining identity at (u, v); empty when
// they agree. Exact eps coordinates make the limit literal.
inline std::optional<std::vector<Rational>> lie_rdiff_defect(const LieDiffFixture& fx,
                                                             const std::vector<Rational>& u,
                                                             const std::vector<Rational>& v) {
    using L = LaurentSeries<Rational>;
    auto lhs = detail::apply_coeffs(fx.op, lie_bracket(fx.algebra, u, v));
    auto du = detail::apply_coeffs(fx.op, u);
    auto dv = detail::apply_coeffs(fx.op, v);
    auto low_du = vec_scale(fx.pair.lower, lift_vector<L>(du));
    auto low_dv = vec_scale(fx.pair.lower, lift_vector<L>(dv));
    auto inner = vec_add(vec_sub(lie_act(fx.action, fx.algebra, lift_vector<L>(u), low_dv),
                                 lie_act(fx.action, fx.algebra, lift_vector<L>(v), low_du)),
                         lie_bracket(fx.algebra, low_du, low_dv));
    auto raised = vec_scale(fx.pair.raise, inner);
    std::vector<Rational> limit(raised.size(), Rational(0));
    for (std::size_t k = 0; k < raised.size(); ++k) limit[k] = eps_limit_scalar(raised[k]);
    auto defect = vec_sub(lhs, limit);
    if (vec_is_zero(defect)) return std::nullopt;
    return defect;
}

// Bilinear identity, so basis pairs certify it; random vectors guard the
// evaluation path.
inline CheckResult check_lie_rdiff(const LieDiffFixture& fx, Sampler& rng, long n) {
    const std::string name = "lie-rdiff";
    const std::string claim = "operator values on brackets match the acted bracket of values";
    try {
        const std::size_t d = fx.algebra.dim;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d);
                u[i] = Rational(1);
                v[j] = Rational(1);
                if (auto defect = lie_rdiff_defect(fx, u, v)) {
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
            if (auto defect = lie_rdiff_defect(fx, u, v)) {
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

// Linearization of a group fixture at the unit, sharing the jet and mixed
// partial plumbing with the operator side.
inline LieDiffFixture diff_group_tangent(const GroupDiffFixture& fx) {
    LieDiffFixture t;
    t.name = fx.name + "-tangent";
    t.algebra = LieAlgebra::from_strictly_upper(fx.dim);
    t.op = detail::operator_tangent(fx.op, fx.dim);
    t.action = detail::action_tangent(fx.action, fx.dim);
    t.pair = detail::pair_tangent(fx.pair);
    return t;
}

struct NovikovLieProduct {
    std::string name;
    LieAlgebra algebra;
    ScalarPair pair;
    LieActionSpec action;
    // table[i][j] = coordinates of e_i o e_j
    std::vector<std::vector<std::vector<Rational>>> table;
};

// lim raise(gamma_u(lower x)), the effective action appearing on the right of
// both axioms.
inline std::vector<Rational> limit_act(const LieAlgebra& g, const ScalarPair& pair,
                                       const LieActionSpec& action, const std::vector<Rational>& u,
                                       const std::vector<Rational>& x) {
    using L = LaurentSeries<Rational>;
    auto low = vec_scale(pair.lower, lift_vector<L>(x));
    auto raised = vec_scale(pair.raise, lie_act(action, g, lift_vector<L>(u), low));
    std::vector<Rational> out(raised.size(), Rational(0));
    for (std::size_t k = 0; k < raised.size(); ++k) out[k] = eps_limit_scalar(raised[k]);
    return out;
}

inline std::vector<Rational> novikov_table_mul(const NovikovLieProduct& np,
                                               const std::vector<Rational>& u,
                                               const std::vector<Rational>& v) {
    const std::size_t d = np.algebra.dim;
    auto out = vec_zero<Rational>(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (is_zero(u[i]) || is_zero(v[j])) continue;
            out = vec_add(out, vec_scale(u[i] * v[j], np.table[i][j]));
        }
    return out;
}

// u o v = lim raise(gamma_u(lower(D v))). Both hypotheses are verified before
// the table is built: the defining identity on basis pairs, and the vanishing
// of the raised bracket of lowered elements.
inline NovikovLieProduct novikov_lie_from_derivation(const LieDiffFixture& fx) {
    using L = LaurentSeries<Rational>;
    const std::size_t d = fx.algebra.dim;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d);
            u[i] = Rational(1);
            v[j] = Rational(1);
            if (lie_rdiff_defect(fx, u, v))
                throw FixtureError("differential identity fails on a basis pair");
            auto low_u = vec_scale(fx.pair.lower, lift_vector<L>(u));
            auto low_v = vec_scale(fx.pair.lower, lift_vector<L>(v));
            auto raised = vec_scale(fx.pair.raise, lie_bracket(fx.algebra, low_u, low_v));
            for (std::size_t k = 0; k < d; ++k)
                if (!is_zero(eps_limit_scalar(raised[k])))
                    throw FixtureError("carrier is not limit-abelian for this pair");
        }

    NovikovLieProduct np;
    np.name = fx.name + "-novikov";
    np.algebra = fx.algebra;
    np.pair = fx.pair;
    np.action = fx.action;
    np.table.assign(d, std::vector<std::vector<Rational>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto ei = vec_zero<Rational>(d), ej = vec_zero<Rational>(d);
            ei[i] = Rational(1);
            ej[j] = Rational(1);
            np.table[i][j] =
                limit_act(fx.algebra, fx.pair, fx.action, ei, detail::apply_coeffs(fx.op, ej));
        }
    return np;
}

// Both axioms are trilinear, so basis triples certify them.
inline CheckResult check_novikov_lie(const NovikovLieProduct& np, Sampler& rng, long n) {
    const std::string name = "novikov-lie";
    const std::string claim = "the product satisfies both axioms against the limit action";
    auto defect = [&](const std::vector<Rational>& u, const std::vector<Rational>& v,
                      const std::vector<Rational>& w) -> std::optional<nlohmann::json> {
        auto act = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
            return limit_act(np.algebra, np.pair, np.action, x, y);
        };
        auto lhs1 = novikov_table_mul(np, u, lie_bracket(np.algebra, v, w));
        auto rhs1 =
            vec_sub(act(u, novikov_table_mul(np, v, w)), act(u, novikov_table_mul(np, w, v)));
        if (!vec_is_zero(vec_sub(lhs1, rhs1)))
            return nlohmann::json{{"law", "product-of-bracket"},
                                  {"lhs", detail::coord_json(lhs1)},
                                  {"rhs", detail::coord_json(rhs1)}};
        auto lhs2 = novikov_table_mul(np, lie_bracket(np.algebra, u, v), w);
        auto rhs2 =
            vec_sub(act(u, novikov_table_mul(np, v, w)), act(v, novikov_table_mul(np, u, w)));
        if (!vec_is_zero(vec_sub(lhs2, rhs2)))
            return nlohmann::json{{"law", "bracket-of-product"},
                                  {"lhs", detail::coord_json(lhs2)},
                                  {"rhs", detail::coord_json(rhs2)}};
        return std::nullopt;
    };
    try {
        const std::size_t d = np.algebra.dim;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d),
                         w = vec_zero<Rational>(d);
                    u[i] = Rational(1);
                    v[j] = Rational(1);
                    w[k] = Rational(1);
                    if (auto bad = defect(u, v, w)) {
                        (*bad)["basis_triple"] = {i + 1, j + 1, k + 1};
                        return CheckResult::fail(name, claim, *bad);
                    }
                }
        for (long round = 0; round < n; ++round) {
            std::vector<Rational> u, v, w;
            for (std::size_t t = 0; t < d; ++t) {
                u.push_back(rng.rational());
                v.push_back(rng.rational());
                w.push_back(rng.rational());
            }
            if (auto bad = defect(u, v, w)) {
                (*bad)["u"] = detail::coord_json(u);
                (*bad)["v"] = detail::coord_json(v);
                (*bad)["w"] = detail::coord_json(w);
                return CheckResult::fail(name, claim, *bad);
            }
        }
        auto r = CheckResult::pass(name, claim);
        r.samples = n;
        return r;
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// Mixed partials of the group product at the unit; the other leg of the
// square whose first leg is novikov_lie_from_derivation(diff_group_tangent).
inline NovikovLieProduct novikov_group_tangent(const GroupDiffFixture& fx) {
    NovikovLieProduct t;
    t.name = fx.name + "-novikov-tangent";
    t.algebra = LieAlgebra::from_strictly_upper(fx.dim);
    t.pair = detail::pair_tangent(fx.pair);
    t.action = detail::action_tangent(fx.action, fx.dim);
    t.table = triangle_tangent_tensor(
        fx.dim, [&](const auto& a, const auto& b) { return novikov_mul(fx, a, b); });
    return t;
}

}  // namespace limitweight
