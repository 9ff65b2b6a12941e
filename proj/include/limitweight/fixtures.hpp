#pragma once

// Named concrete carriers shared by the test suites and the command line
// driver. The Heisenberg carrier is the 3x3 unipotent group with exponential
// coordinates <a, b, c> = exp(a E12 + b E23 + c E13); its variants differ in
// the map pair and the operator placed on top.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "diff_novikov.hpp"
#include "lie.hpp"
#include "matrix.hpp"
#include "nilpotent.hpp"
#include "ode_flow.hpp"
#include "rational.hpp"
#include "rota_baxter.hpp"

namespace limitweight {

template <class R>
Matrix<R> heisenberg_element(const R& a, const R& b, const R& c) {
    Matrix<R> n(3);
    n(0, 1) = a;
    n(1, 2) = b;
    n(0, 2) = c;
    return mat_exp(n);
}

// Exponential coordinates of a 3x3 unipotent matrix.
template <class R>
std::vector<R> heisenberg_coords(const Matrix<R>& g) {
    return upper_coords(mat_log(g));
}

// Log-level operator sending E23 to E12 and the rest to zero; in the
// coordinate order (E12, E23, E13) that is the single entry (1, 2).
inline Matrix<Rational> heisenberg_b0() {
    Matrix<Rational> b(3);
    b(0, 1) = Rational(1);
    return b;
}

// Power map pair, conjugation action, operator exp(B0(log g)). The lowered
// elements g^eps limit to the unit, so the declared weight is zero.
inline GroupRBFixture heisenberg_rb() {
    GroupRBFixture fx;
    fx.name = "heisenberg-rb";
    fx.dim = 3;
    fx.pair = PairSpec::power();
    fx.action = GroupActionSpec{GroupActionKind::conjugation};
    fx.op = OperatorSpec::linear_log(heisenberg_b0());
    fx.weight_zero = true;
    return fx;
}

// Identity map pair with the inversion operator; nothing is lowered, so the
// weight is not zero and the descent product is the opposite group.
inline GroupRBFixture inversion_weight_one() {
    GroupRBFixture fx;
    fx.name = "inversion-weight-one";
    fx.dim = 3;
    fx.pair = PairSpec::identity();
    fx.action = GroupActionSpec{GroupActionKind::conjugation};
    fx.op = OperatorSpec::inversion();
    fx.weight_zero = false;
    return fx;
}

// Grading derivation: E12 and E23 scale by one, E13 by two.
inline Matrix<Rational> heisenberg_d0() {
    Matrix<Rational> d(3);
    d(0, 0) = Rational(1);
    d(1, 1) = Rational(1);
    d(2, 2) = Rational(2);
    return d;
}

// Power map pair, conjugation action, and the flow-style lift of the grading
// derivation as the operator.
inline GroupDiffFixture heisenberg_diff() {
    GroupDiffFixture fx;
    fx.name = "heisenberg-diff";
    fx.dim = 3;
    fx.pair = PairSpec::power();
    fx.action = GroupActionSpec{GroupActionKind::conjugation};
    fx.op = OperatorSpec::derivation_log(heisenberg_d0());
    return fx;
}

// Closed-form candidate exp(Dv + [v,Dv]/2 + cross.[u,Dv]) for the product on
// the Heisenberg carrier. The defining limit matches cross = 1; other values
// are kept available so the checker can show where they break.
inline NovikovGroupProduct heisenberg_novikov_candidate(const Rational& cross) {
    NovikovGroupProduct np;
    np.name = "heisenberg-novikov-candidate";
    np.dim = 3;
    np.pair = PairSpec::power();
    np.action = GroupActionSpec{GroupActionKind::conjugation};
    auto d0 = heisenberg_d0();
    np.mul = [d0, cross](const Matrix<Rational>& a, const Matrix<Rational>& b) {
        auto u = mat_log(a), v = mat_log(b);
        auto dv = apply_linear_on_upper(d0, v, [](const Rational& c) { return c; });
        return mat_exp(dv + Rational(1, 2) * (v * dv - dv * v) + cross * (u * dv - dv * u));
    };
    return np;
}

// Tangent of the heisenberg fixture packaged as a named algebra-level
// carrier: strictly upper 3x3 with the power scalar pair, adjoint action,
// and the linearized operator.
inline LieRBFixture scalar_pair_algebra() {
    auto fx = rb_group_tangent(heisenberg_rb());
    fx.name = "scalar-pair-algebra";
    return fx;
}

// The two-dimensional algebra with [e0, e1] = e0, the smallest carrier with a
// nonzero bracket and a rich derivation space.
inline LieAlgebra affine_line_algebra() {
    LieAlgebra g = LieAlgebra::abelian(2);
    g.c[0][1] = {Rational(1), Rational(0)};
    g.c[1][0] = {Rational(-1), Rational(0)};
    return g;
}

// Base algebras for randomized derivation fixtures, dimensions 2 through 4:
// abelian carriers, the affine line, strictly upper 3x3, and the latter with
// an extra central direction.
inline std::vector<LieAlgebra> derivation_algebra_pool() {
    std::vector<LieAlgebra> pool = {LieAlgebra::abelian(2), LieAlgebra::abelian(4),
                                    affine_line_algebra(), LieAlgebra::from_strictly_upper(3)};
    LieAlgebra h4 = LieAlgebra::abelian(4);
    auto h3 = LieAlgebra::from_strictly_upper(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            auto v = h3.c[i][j];
            v.push_back(Rational(0));
            h4.c[i][j] = v;
        }
    pool.push_back(h4);
    return pool;
}

// Random basis change of a pool algebra equipped with a random derivation,
// the power scalar pair, and the adjoint action. `index` walks the pool so a
// battery of draws covers every base shape.
inline LieDiffFixture random_derivation_fixture(std::size_t index, Sampler& rng) {
    auto pool = derivation_algebra_pool();
    auto g = random_basis_change(pool[index % pool.size()], rng);
    LieDiffFixture fx;
    fx.name = "random-derivation-" + std::to_string(index);
    fx.algebra = g;
    fx.pair = ScalarPair::power();
    fx.op = random_derivation(g, rng);
    return fx;
}

namespace detail {

inline RealMatrix real_2x2(double a, double b, double c, double d) {
    RealMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

}  // namespace detail

// Constant strictly upper path; the flow is I + x E12, so f(1) = I + E12.
inline CoefficientPath constant_upper_path() {
    return polynomial_path("constant-upper", {detail::real_2x2(0, 1, 0, 0)});
}

// Constant diag(1, -1); the flow is diag(e^x, e^-x), a closed-form oracle.
inline CoefficientPath hyperbolic_path() {
    return polynomial_path("hyperbolic-diagonal", {detail::real_2x2(1, 0, 0, -1)});
}

// Constant diag(1, 2); commutes with hyperbolic_path, so their conjugated sum
// degenerates to pointwise addition.
inline CoefficientPath stretch_path() {
    return polynomial_path("stretch-diagonal", {detail::real_2x2(1, 0, 0, 2)});
}

// x times the upper nilpotent pattern; the flow is I + (x^2/2) E12.
inline CoefficientPath ramp_upper_path() {
    return polynomial_path("ramp-upper", {detail::real_2x2(0, 0, 0, 0), detail::real_2x2(0, 1, 0, 0)});
}

// Constant lower pattern; does not commute with the upper paths.
inline CoefficientPath constant_lower_path() {
    return polynomial_path("constant-lower", {detail::real_2x2(0, 0, 1, 0)});
}

// The named polynomial test set for the flow suite: zero, nilpotent constant,
// diagonal with a closed-form flow, a time-dependent ramp, and a lower
// pattern that fails to commute with the others.
inline std::vector<CoefficientPath> ode_polynomial_set() {
    return {zero_path(2), constant_upper_path(), hyperbolic_path(), ramp_upper_path(),
            constant_lower_path()};
}

// Random polynomial path with quarter-integer coefficients, scaled by the
// degree so the path entries stay bounded by 4 on [0, 1]. That is the regime
// the default step and tolerance are calibrated for; hotter paths inflate the
// fourth-order error constants through powers of the solution norm.
inline CoefficientPath random_polynomial_path(std::string name, std::size_t dim, int degree,
                                              std::mt19937_64& rng) {
    if (degree < 0) throw FixtureError("random polynomial path needs degree >= 0");
    const int lim = 16 / (degree + 1);
    std::uniform_int_distribution<int> quarters(-lim, lim);
    std::vector<RealMatrix> coeffs;
    for (int k = 0; k <= degree; ++k) {
        RealMatrix c(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) c(i, j) = quarters(rng) / 4.0;
        coeffs.push_back(std::move(c));
    }
    return polynomial_path(std::move(name), std::move(coeffs));
}

}  // namespace limitweight
