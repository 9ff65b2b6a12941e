#pragma once

// Triangle products layered over transported groups. A post structure here is
// a triangle product on a carrier whose base product is the transported one;
// the defining laws are
//
//   a |> (b . c) = (a |> b) . (a |> c)            (left multiplications act)
//   (a . (a |> b)) |> c = a |> (b |> c)           (weighted associativity)
//   a |> e = e,  e |> a = a
//
// with . the transported product. When the transported product is commutative
// the structure is a pre structure. An operator fixture induces a triangle by
// acting on lowered elements and raising the limit, and the star product
// a . (a |> b) recovers the operator's descent product. On the algebra side
// the same layering gives the two bracket laws below, phrased through the
// effective bracket <<u, v>> = lim raise([lower u, lower v]):
//
//   u |> <<v, w>> = <<u |> v, w>> + <<v, u |> w>>
//   (<<u, v>> + u |> v - v |> u) |> w = u |> (v |> w) - v |> (u |> w)
//
// A vanishing effective bracket turns the second law into the pre-Lie
// identity.

#include <cstddef>
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
#include "rota_baxter.hpp"

namespace limitweight {

// a |> b = lim raise( Gamma_{B(a)}(lower(b)) ); the lower(a) factor of the
// descent product is dropped, leaving the action part alone.
template <class T>
Matrix<T> rb_triangle(const GroupRBFixture& fx, const Matrix<T>& a, const Matrix<T>& b) {
    auto lb = pair_lower(fx.pair, eps_lift(b));
    return laurent_limit(pair_raise(fx.pair, group_act(fx.action, apply_operator(fx.op, a), lb)));
}

template <class T, class F>
Matrix<T> grossman_star(const PairSpec& p, F&& tri, const Matrix<T>& a, const Matrix<T>& b) {
    return transported_mul(p, a, tri(a, b));
}

// Post laws for an arbitrary triangle callable over the transported product.
template <class F>
CheckResult check_post_group(const PairSpec& p, std::size_t dim, F&& tri, Sampler& rng, long n) {
    return sampled_check(
        "post-group", "the triangle product satisfies the post laws over the transported product",
        rng, n, [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(dim), b = s.unipotent(dim), c = s.unipotent(dim);
            auto e = Matrix<Rational>::identity(dim);
            auto lhs1 = tri(a, transported_mul(p, b, c));
            auto rhs1 = transported_mul(p, tri(a, b), tri(a, c));
            if (!(lhs1 == rhs1))
                return nlohmann::json{{"law", "left-multiplications-act"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"lhs", matrix_to_json(lhs1)},
                                      {"rhs", matrix_to_json(rhs1)}};
            auto lhs2 = tri(transported_mul(p, a, tri(a, b)), c);
            auto rhs2 = tri(a, tri(b, c));
            if (!(lhs2 == rhs2))
                return nlohmann::json{{"law", "weighted-associativity"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"lhs", matrix_to_json(lhs2)},
                                      {"rhs", matrix_to_json(rhs2)}};
            if (!(tri(a, e) == e && tri(e, a) == a))
                return nlohmann::json{{"law", "units"}, {"a", matrix_to_json(a)}};
            return std::nullopt;
        });
}

template <class F>
CheckResult check_post_group_symbolic(const PairSpec& p, std::size_t dim, F&& tri) {
    const std::string name = "post-group-symbolic";
    const std::string claim = "the post laws hold identically in generic coordinates";
    try {
        auto a = symbolic_unipotent(dim, 0), b = symbolic_unipotent(dim, 1), c = symbolic_unipotent(dim, 2);
        auto names = coordinate_names(dim, 3);
        auto e = Matrix<Polynomial>::identity(dim);
        auto lhs1 = tri(a, transported_mul(p, b, c));
        auto rhs1 = transported_mul(p, tri(a, b), tri(a, c));
        if (!(lhs1 == rhs1))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "left-multiplications-act"},
                                                    {"lhs", poly_matrix_to_json(lhs1, names)},
                                                    {"rhs", poly_matrix_to_json(rhs1, names)}});
        auto lhs2 = tri(transported_mul(p, a, tri(a, b)), c);
        auto rhs2 = tri(a, tri(b, c));
        if (!(lhs2 == rhs2))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "weighted-associativity"},
                                                    {"lhs", poly_matrix_to_json(lhs2, names)},
                                                    {"rhs", poly_matrix_to_json(rhs2, names)}});
        if (!(tri(a, e) == e && tri(e, a) == a))
            return CheckResult::fail(name, claim, nlohmann::json{{"law", "units"}});
        return CheckResult::pass(name, claim);
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// The star product of the induced triangle must reproduce the descent
// product, and the operator must take both to the same original-group image.
inline CheckResult check_star_matches_descent(const GroupRBFixture& fx, Sampler& rng, long n) {
    return sampled_check(
        "star-descent", "a . (a |> b) over the transported product equals the descent product", rng,
        n, [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(fx.dim), b = s.unipotent(fx.dim);
            auto tri = [&](const auto& x, const auto& y) { return rb_triangle(fx, x, y); };
            auto star = grossman_star(fx.pair, tri, a, b);
            auto des = descent_mul(fx, a, b);
            if (star == des) return std::nullopt;
            return nlohmann::json{{"a", matrix_to_json(a)},
                                  {"b", matrix_to_json(b)},
                                  {"star", matrix_to_json(star)},
                                  {"descent", matrix_to_json(des)}};
        });
}

struct PostLieFixture {
    std::string name;
    LieAlgebra algebra;
    ScalarPair pair;
    // triangle[i][j] = coordinates of e_i |> e_j
    std::vector<std::vector<std::vector<Rational>>> triangle;
};

template <class R>
std::vector<R> post_lie_triangle(const PostLieFixture& fx, const std::vector<R>& u,
                                 const std::vector<R>& v) {
    const std::size_t d = fx.algebra.dim;
    std::vector<R> out = vec_zero<R>(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            R f = u[i] * v[j];
            if (is_zero(f)) continue;
            for (std::size_t k = 0; k < d; ++k)
                out[k] = out[k] + f * scalar_lift<R>(fx.triangle[i][j][k]);
        }
    return out;
}

// <<u, v>> = lim raise([lower u, lower v]), evaluated in exact eps
// coordinates.
inline std::vector<Rational> effective_bracket(const PostLieFixture& fx, const std::vector<Rational>& u,
                                               const std::vector<Rational>& v) {
    using L = LaurentSeries<Rational>;
    auto lu = vec_scale(fx.pair.lower, lift_vector<L>(u));
    auto lv = vec_scale(fx.pair.lower, lift_vector<L>(v));
    auto raised = vec_scale(fx.pair.raise, lie_bracket(fx.algebra, lu, lv));
    std::vector<Rational> out(raised.size(), Rational(0));
    for (std::size_t k = 0; k < raised.size(); ++k) out[k] = eps_limit_scalar(raised[k]);
    return out;
}

inline bool is_limit_abelian_algebra(const PostLieFixture& fx) {
    const std::size_t d = fx.algebra.dim;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d);
            u[i] = Rational(1);
            v[j] = Rational(1);
            if (!vec_is_zero(effective_bracket(fx, u, v))) return false;
        }
    return true;
}

namespace detail {

inline nlohmann::json coord_json(const std::vector<Rational>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

}  // namespace detail

// Both bracket laws; trilinear, so basis triples certify them and random
// vectors only guard the evaluation path.
inline CheckResult check_post_lie(const PostLieFixture& fx, Sampler& rng, long n) {
    const std::string name = "post-lie";
    const std::string claim = "the triangle satisfies both bracket laws through the effective bracket";
    try {
        const std::size_t d = fx.algebra.dim;
        auto tri = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
            return post_lie_triangle(fx, u, v);
        };
        auto at = [&](const std::vector<Rational>& u, const std::vector<Rational>& v,
                      const std::vector<Rational>& w) -> std::optional<nlohmann::json> {
            auto lhs1 = tri(u, effective_bracket(fx, v, w));
            auto rhs1 = vec_add(effective_bracket(fx, tri(u, v), w),
                                effective_bracket(fx, v, tri(u, w)));
            if (!vec_is_zero(vec_sub(lhs1, rhs1)))
                return nlohmann::json{{"law", "triangle-derives-effective-bracket"},
                                      {"u", detail::coord_json(u)},
                                      {"v", detail::coord_json(v)},
                                      {"w", detail::coord_json(w)},
                                      {"lhs", detail::coord_json(lhs1)},
                                      {"rhs", detail::coord_json(rhs1)}};
            auto head = vec_add(effective_bracket(fx, u, v), vec_sub(tri(u, v), tri(v, u)));
            auto lhs2 = tri(head, w);
            auto rhs2 = vec_sub(tri(u, tri(v, w)), tri(v, tri(u, w)));
            if (!vec_is_zero(vec_sub(lhs2, rhs2)))
                return nlohmann::json{{"law", "weighted-associativity"},
                                      {"u", detail::coord_json(u)},
                                      {"v", detail::coord_json(v)},
                                      {"w", detail::coord_json(w)},
                                      {"lhs", detail::coord_json(lhs2)},
                                      {"rhs", detail::coord_json(rhs2)}};
            return std::nullopt;
        };
        auto basis = [&](std::size_t i) {
            auto v = vec_zero<Rational>(d);
            v[i] = Rational(1);
            return v;
        };
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    if (auto w = at(basis(i), basis(j), basis(k)))
                        return CheckResult::fail(name, claim, *w);
        for (long round = 0; round < n; ++round) {
            std::vector<Rational> u, v, w;
            for (std::size_t k = 0; k < d; ++k) {
                u.push_back(rng.rational());
                v.push_back(rng.rational());
                w.push_back(rng.rational());
            }
            if (auto wit = at(u, v, w)) return CheckResult::fail(name, claim, *wit);
        }
        auto r = CheckResult::pass(name, claim);
        r.samples = n;
        return r;
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// Pre structure: the effective bracket must vanish and the triangle must then
// satisfy the pre-Lie identity outright.
inline CheckResult check_pre_lie(const PostLieFixture& fx, Sampler& rng, long n) {
    const std::string name = "pre-lie";
    const std::string claim = "the effective bracket vanishes and the triangle is pre-Lie";
    try {
        if (!is_limit_abelian_algebra(fx))
            return CheckResult::fail(name, claim, nlohmann::json{{"law", "limit-abelian"}});
        const std::size_t d = fx.algebra.dim;
        auto tri = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
            return post_lie_triangle(fx, u, v);
        };
        auto at = [&](const std::vector<Rational>& u, const std::vector<Rational>& v,
                      const std::vector<Rational>& w) -> std::optional<nlohmann::json> {
            auto lhs = vec_sub(tri(u, tri(v, w)), tri(tri(u, v), w));
            auto rhs = vec_sub(tri(v, tri(u, w)), tri(tri(v, u), w));
            if (vec_is_zero(vec_sub(lhs, rhs))) return std::nullopt;
            return nlohmann::json{{"law", "pre-lie"},
                                  {"u", detail::coord_json(u)},
                                  {"v", detail::coord_json(v)},
                                  {"w", detail::coord_json(w)},
                                  {"lhs", detail::coord_json(lhs)},
                                  {"rhs", detail::coord_json(rhs)}};
        };
        auto basis = [&](std::size_t i) {
            auto v = vec_zero<Rational>(d);
            v[i] = Rational(1);
            return v;
        };
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    if (auto w = at(basis(i), basis(j), basis(k)))
                        return CheckResult::fail(name, claim, *w);
        for (long round = 0; round < n; ++round) {
            std::vector<Rational> u, v, w;
            for (std::size_t k = 0; k < d; ++k) {
                u.push_back(rng.rational());
                v.push_back(rng.rational());
                w.push_back(rng.rational());
            }
            if (auto wit = at(u, v, w)) return CheckResult::fail(name, claim, *wit);
        }
        auto r = CheckResult::pass(name, claim);
        r.samples = n;
        return r;
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// u |> v = lim raise( gamma_{Bu}(lower v) ), tabulated on the basis.
inline PostLieFixture rb_to_postlie(const LieRBFixture& fx) {
    using L = LaurentSeries<Rational>;
    PostLieFixture out;
    out.name = fx.name + "-triangle";
    out.algebra = fx.algebra;
    out.pair = fx.pair;
    const std::size_t d = fx.algebra.dim;
    out.triangle.assign(d, std::vector<std::vector<Rational>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto u = vec_zero<Rational>(d), v = vec_zero<Rational>(d);
            u[i] = Rational(1);
            v[j] = Rational(1);
            auto bu = detail::apply_coeffs(fx.op, u);
            auto lv = vec_scale(fx.pair.lower, lift_vector<L>(v));
            auto raised =
                vec_scale(fx.pair.raise, lie_act(fx.action, fx.algebra, lift_vector<L>(bu), lv));
            std::vector<Rational> coords(d, Rational(0));
            for (std::size_t k = 0; k < d; ++k) coords[k] = eps_limit_scalar(raised[k]);
            out.triangle[i][j] = coords;
        }
    return out;
}

// Linearization of a group triangle at the unit: the mixed partial of the
// triangle word on basis directions.
template <class F>
std::vector<std::vector<std::vector<Rational>>> triangle_tangent_tensor(std::size_t matrix_dim,
                                                                        F&& tri) {
    auto pos = strictly_upper_positions(matrix_dim);
    const std::size_t d = pos.size();
    std::vector<std::vector<std::vector<Rational>>> out(d, std::vector<std::vector<Rational>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Matrix<Rational> ei(matrix_dim), ej(matrix_dim);
            ei(pos[i].first, pos[i].second) = Rational(1);
            ej(pos[j].first, pos[j].second) = Rational(1);
            out[i][j] = upper_coords(mixed_partial(tri, ei, ej));
        }
    return out;
}

}  // namespace limitweight
