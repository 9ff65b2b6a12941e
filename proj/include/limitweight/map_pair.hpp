#pragma once

// Map pairs (lower, raise) with raise o lower = id on unipotent carriers, and
// the limit structures they induce: the transported product
//     a *oo b = lim raise(lower(a) lower(b)),
// its unit and inverses, the conjugation limit action, abelianness of the
// transported product, and synchronization of limits with eps-families.
//
// The built-in pairs scale the logarithm by a fixed eps-monomial: "power" uses
// eps (so lower(a) = a^eps), "identity" uses 1, and "scale-log" any monomial
// with an exact inverse. Everything is generic over the coefficient ring, so
// the same code runs on rational samples, on generic polynomial coordinates
// (symbolic mode), and on jets (tangent extraction).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "check.hpp"
#include "json_io.hpp"
#include "nilpotent.hpp"

namespace limitweight {

using EpsScalar = LaurentSeries<Rational>;
using EpsMatrix = Matrix<EpsScalar>;

enum class PairKind { identity, power, scale_log };

struct PairSpec {
    PairKind kind = PairKind::power;
    // scale_log only: log multipliers for lower and raise; their product must be 1.
    EpsScalar lower_scale;
    EpsScalar raise_scale;

    static PairSpec power() { return {PairKind::power, {}, {}}; }
    static PairSpec identity() { return {PairKind::identity, {}, {}}; }

    static PairSpec scale_log(const EpsScalar& lower, const EpsScalar& raise) {
        if (lower.terms().size() != 1 || raise.terms().size() != 1 || !(lower * raise == EpsScalar(1)))
            throw FixtureError("scale-log pair needs single-term scales with product 1");
        return {PairKind::scale_log, lower, raise};
    }
};

// Lower/raise act on matrices over any ring S containing eps.
template <class S>
Matrix<S> pair_lower(const PairSpec& p, const Matrix<S>& a) {
    switch (p.kind) {
        case PairKind::identity: return a;
        case PairKind::power: return unipotent_power(a, eps_in<S>(1));
        default: return unipotent_power(a, scalar_lift<S>(p.lower_scale));
    }
}

template <class S>
Matrix<S> pair_raise(const PairSpec& p, const Matrix<S>& a) {
    switch (p.kind) {
        case PairKind::identity: return a;
        case PairKind::power: return unipotent_power(a, eps_in<S>(-1));
        default: return unipotent_power(a, scalar_lift<S>(p.raise_scale));
    }
}

// The eps-extension of a coefficient ring: where limit computations happen.
template <class T>
struct eps_extension {
    using type = LaurentSeries<T>;
};
template <class R>
struct eps_extension<Jet<R>> {
    using type = Jet<LaurentSeries<R>>;
};
template <class T>
using eps_extension_t = typename eps_extension<T>::type;

template <class T>
Matrix<eps_extension_t<T>> eps_lift(const Matrix<T>& m) {
    return with_eps_bound(lift_matrix<eps_extension_t<T>>(m), eps_degree_bound(m.dim()));
}

template <class T>
Matrix<T> transported_mul(const PairSpec& p, const Matrix<T>& a, const Matrix<T>& b) {
    return laurent_limit(pair_raise(p, pair_lower(p, eps_lift(a)) * pair_lower(p, eps_lift(b))));
}

template <class T>
Matrix<T> transported_unit(const PairSpec& p, std::size_t dim) {
    using S = eps_extension_t<T>;
    auto ident = with_eps_bound(lift_matrix<S>(Matrix<T>::identity(dim)), eps_degree_bound(dim));
    return laurent_limit(pair_raise(p, ident));
}

template <class T>
Matrix<T> transported_inverse(const PairSpec& p, const Matrix<T>& a) {
    return laurent_limit(pair_raise(p, unipotent_inverse(pair_lower(p, eps_lift(a)))));
}

// The limit action Gamma_a(b) = lim raise(a lower(b) a^-1); a acts through the
// original group, b through the transported one.
template <class T>
Matrix<T> transported_conjugation(const PairSpec& p, const Matrix<T>& a, const Matrix<T>& b) {
    auto ae = eps_lift(a);
    return laurent_limit(pair_raise(p, ae * pair_lower(p, eps_lift(b)) * unipotent_inverse(ae)));
}

// Closure form for custom pairs; the built-in specs convert via make_map_pair.
struct MapPair {
    std::string name;
    std::function<EpsMatrix(const EpsMatrix&)> lower;
    std::function<EpsMatrix(const EpsMatrix&)> raise;
};

inline MapPair make_map_pair(const PairSpec& p) {
    std::string name = p.kind == PairKind::identity ? "identity"
                       : p.kind == PairKind::power  ? "power"
                                                    : "scale-log";
    return {name, [p](const EpsMatrix& m) { return pair_lower(p, m); },
            [p](const EpsMatrix& m) { return pair_raise(p, m); }};
}

inline CheckResult check_pair_identity(const MapPair& pair, std::size_t dim, Sampler& rng, long n) {
    return sampled_check(
        "pair-identity", "raise(lower(a)) = a on unipotent eps-families", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            EpsMatrix a = s.unipotent_family(dim);
            EpsMatrix back = pair.raise(pair.lower(a));
            if (back == a) return std::nullopt;
            return nlohmann::json{{"a", eps_matrix_to_json(a)}, {"raise_lower_a", eps_matrix_to_json(back)}};
        });
}

namespace detail {

template <class T>
nlohmann::json sample_json(const Matrix<T>& m) {
    if constexpr (std::is_same_v<T, Rational>)
        return matrix_to_json(m);
    else
        return poly_matrix_to_json(m);
}

}  // namespace detail

// Group laws for the transported product, including existence of the unit and
// inverse limits. Samples three exact unipotent elements per round.
inline CheckResult check_transported_semigroup(const PairSpec& p, std::size_t dim, Sampler& rng,
                                               long n) {
    return sampled_check(
        "transported-group", "the transported product is associative with unit and inverse limits",
        rng, n, [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(dim), b = s.unipotent(dim), c = s.unipotent(dim);
            auto e = transported_unit<Rational>(p, dim);
            auto lhs = transported_mul(p, transported_mul(p, a, b), c);
            auto rhs = transported_mul(p, a, transported_mul(p, b, c));
            if (!(lhs == rhs))
                return nlohmann::json{{"law", "associativity"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"(ab)c", matrix_to_json(lhs)},
                                      {"a(bc)", matrix_to_json(rhs)}};
            if (!(transported_mul(p, a, e) == a && transported_mul(p, e, a) == a))
                return nlohmann::json{{"law", "unit"}, {"a", matrix_to_json(a)}, {"e", matrix_to_json(e)}};
            auto ai = transported_inverse(p, a);
            if (!(transported_mul(p, a, ai) == e && transported_mul(p, ai, a) == e))
                return nlohmann::json{
                    {"law", "inverse"}, {"a", matrix_to_json(a)}, {"a_inv", matrix_to_json(ai)}};
            return std::nullopt;
        });
}

// Same laws as polynomial identities in generic coordinates.
inline CheckResult check_transported_semigroup_symbolic(const PairSpec& p, std::size_t dim) {
    const std::string name = "transported-group-symbolic";
    const std::string claim = "transported group laws hold identically in generic coordinates";
    try {
        auto a = symbolic_unipotent(dim, 0), b = symbolic_unipotent(dim, 1), c = symbolic_unipotent(dim, 2);
        auto names = coordinate_names(dim, 3);
        auto e = transported_unit<Polynomial>(p, dim);
        auto lhs = transported_mul(p, transported_mul(p, a, b), c);
        auto rhs = transported_mul(p, a, transported_mul(p, b, c));
        if (!(lhs == rhs))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "associativity"},
                                                    {"(ab)c", poly_matrix_to_json(lhs, names)},
                                                    {"a(bc)", poly_matrix_to_json(rhs, names)}});
        auto ai = transported_inverse(p, a);
        if (!(transported_mul(p, a, e) == a && transported_mul(p, e, a) == a))
            return CheckResult::fail(name, claim, nlohmann::json{{"law", "unit"}});
        if (!(transported_mul(p, a, ai) == e && transported_mul(p, ai, a) == e))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"law", "inverse"},
                                                    {"a_inv", poly_matrix_to_json(ai, names)}});
        return CheckResult::pass(name, claim);
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// Commutativity of the transported product, in both the direct form and the
// commutator-limit form lim raise(lower(a) lower(b) lower(a)^-1 lower(b)^-1) = e.
inline CheckResult is_limit_abelian(const PairSpec& p, std::size_t dim, Sampler& rng, long n) {
    return sampled_check(
        "limit-abelian", "the transported product is commutative", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(dim), b = s.unipotent(dim);
            auto ab = transported_mul(p, a, b);
            auto ba = transported_mul(p, b, a);
            if (!(ab == ba))
                return nlohmann::json{{"law", "commutativity"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"ab", matrix_to_json(ab)},
                                      {"ba", matrix_to_json(ba)}};
            auto ae = pair_lower(p, eps_lift(a)), be = pair_lower(p, eps_lift(b));
            auto comm = laurent_limit(
                pair_raise(p, ae * be * unipotent_inverse(ae) * unipotent_inverse(be)));
            if (!(comm == transported_unit<Rational>(p, dim)))
                return nlohmann::json{{"law", "commutator-limit"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"commutator", matrix_to_json(comm)}};
            return std::nullopt;
        });
}

inline CheckResult is_limit_abelian_symbolic(const PairSpec& p, std::size_t dim) {
    const std::string name = "limit-abelian-symbolic";
    const std::string claim = "the transported product is commutative in generic coordinates";
    try {
        auto a = symbolic_unipotent(dim, 0), b = symbolic_unipotent(dim, 1);
        auto names = coordinate_names(dim, 2);
        auto ab = transported_mul(p, a, b);
        auto ba = transported_mul(p, b, a);
        if (!(ab == ba))
            return CheckResult::fail(name, claim,
                                     nlohmann::json{{"ab", poly_matrix_to_json(ab, names)},
                                                    {"ba", poly_matrix_to_json(ba, names)}});
        return CheckResult::pass(name, claim);
    } catch (const Error& e) {
        return CheckResult::error(name, claim, nlohmann::json{{"exception", e.what()}});
    }
}

// Limits commute with the pair structure along eps-families: applying the
// product at the eps level and then taking limits agrees with the transported
// product of the family limits.
inline CheckResult check_synchronized(const PairSpec& p, std::size_t dim, Sampler& rng, long n) {
    return sampled_check(
        "synchronized-limits", "family limits commute with the transported product", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            EpsMatrix a = s.unipotent_family(dim);
            EpsMatrix b = s.unipotent_family(dim);
            auto family = laurent_limit(pair_raise(p, pair_lower(p, a) * pair_lower(p, b)));
            auto limits = transported_mul(p, laurent_limit(a), laurent_limit(b));
            if (family == limits) return std::nullopt;
            return nlohmann::json{{"a", eps_matrix_to_json(a)},
                                  {"b", eps_matrix_to_json(b)},
                                  {"family_then_limit", matrix_to_json(family)},
                                  {"limits_then_product", matrix_to_json(limits)}};
        });
}

// The conjugation limit action: automorphisms of the transported group, with
// a -> Gamma_a a homomorphism from the original group.
inline CheckResult check_limit_action(const PairSpec& p, std::size_t dim, Sampler& rng, long n) {
    return sampled_check(
        "limit-action", "conjugation limits act by automorphisms of the transported group", rng, n,
        [&](Sampler& s) -> std::optional<nlohmann::json> {
            auto a = s.unipotent(dim), b = s.unipotent(dim), c = s.unipotent(dim);
            auto lhs = transported_conjugation(p, a, transported_mul(p, b, c));
            auto rhs = transported_mul(p, transported_conjugation(p, a, b),
                                       transported_conjugation(p, a, c));
            if (!(lhs == rhs))
                return nlohmann::json{{"law", "automorphism"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)}};
            auto comp = transported_conjugation(p, a, transported_conjugation(p, b, c));
            auto joint = transported_conjugation(p, a * b, c);
            if (!(comp == joint))
                return nlohmann::json{{"law", "action-composition"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"c", matrix_to_json(c)},
                                      {"joint", matrix_to_json(joint)},
                                      {"composed", matrix_to_json(comp)}};
            auto back = transported_conjugation(p, unipotent_inverse(a),
                                                transported_conjugation(p, a, b));
            if (!(back == b))
                return nlohmann::json{{"law", "invertibility"},
                                      {"a", matrix_to_json(a)},
                                      {"b", matrix_to_json(b)},
                                      {"round_trip", matrix_to_json(back)}};
            return std::nullopt;
        });
}

}  // namespace limitweight
