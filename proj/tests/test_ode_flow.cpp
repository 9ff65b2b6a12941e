#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <limitweight/fixtures.hpp>
#include <limitweight/ode_flow.hpp>

using namespace limitweight;

namespace {

RealMatrix real2(double a, double b, double c, double d) {
    RealMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

}  // namespace

TEST_CASE("lu inversion and determinants on small matrices") {
    auto a = real2(2, 1, 1, 1);
    CHECK(determinant(a) == Catch::Approx(1.0));
    auto inv = flow_inverse(a, 0.0);
    CHECK(max_abs_entry(inv - real2(1, -1, -1, 2)) < 1e-14);
    CHECK(max_abs_entry(a * inv - RealMatrix::identity(2)) < 1e-14);

    // pivoting: a zero in the leading position must not derail the solve
    auto p = real2(0, 1, 1, 0);
    CHECK(determinant(p) == Catch::Approx(-1.0));
    CHECK(max_abs_entry(flow_inverse(p, 0.0) - p) < 1e-15);

    auto singular = real2(1, 2, 2, 4);
    CHECK(determinant(singular) == 0.0);
    CHECK_THROWS_AS(flow_inverse(singular, 0.25), FlowBlowUpError);
}

TEST_CASE("flow of the constant nilpotent path reaches I plus E12") {
    auto flow = solve_ivp(constant_upper_path());
    CHECK(flow.grid.size() == 1025);
    CHECK(max_abs_entry(flow.values.front() - RealMatrix::identity(2)) == 0.0);
    for (std::size_t i = 1; i < flow.grid.size(); ++i) CHECK(flow.grid[i] > flow.grid[i - 1]);
    CHECK(max_abs_entry(flow.values.back() - real2(1, 1, 0, 1)) < 1e-9);
}

TEST_CASE("flow of the hyperbolic diagonal matches the exponential at every node") {
    auto flow = solve_ivp(hyperbolic_path());
    for (std::size_t i = 0; i < flow.grid.size(); ++i) {
        const double x = flow.grid[i];
        CHECK(max_abs_entry(flow.values[i] - real2(std::exp(x), 0, 0, std::exp(-x))) < 1e-8);
    }
}

TEST_CASE("zero path flows to the identity bitwise") {
    auto flow = solve_ivp(zero_path(2));
    for (const auto& v : flow.values) CHECK(max_abs_entry(v - RealMatrix::identity(2)) == 0.0);
}

TEST_CASE("ramp path integrates its quadratic primitive exactly") {
    // f' = x E12 f keeps f = I + c(x) E12 with c' = x, and the fourth-order
    // stepper integrates a linear slope without truncation error
    auto flow = solve_ivp(ramp_upper_path());
    for (std::size_t i = 0; i < flow.grid.size(); ++i) {
        const double x = flow.grid[i];
        CHECK(max_abs_entry(flow.values[i] - real2(1, x * x / 2, 0, 1)) < 1e-13);
    }
}

TEST_CASE("grids that do not fit the window are rejected") {
    CHECK_THROWS_AS(step_count(FlowGrid{0.0, 1.0, 0.3, 1e-12}), FixtureError);
    CHECK_THROWS_AS(step_count(FlowGrid{1.0, 0.0, 0.25, 1e-12}), FixtureError);
    CHECK_THROWS_AS(step_count(FlowGrid{0.0, 1.0, -0.5, 1e-12}), FixtureError);
    CHECK_NOTHROW(step_count(FlowGrid{0.0, 1.0, 0.25, 1e-12}));
}

TEST_CASE("runaway trajectories abort with a blow-up position") {
    auto huge = polynomial_path("huge", {real2(1e200, 0, 0, 1e200)});
    CHECK_THROWS_AS(solve_ivp(huge), FlowBlowUpError);

    // strong uniform decay drives the determinant through the floor mid-run
    auto decay = polynomial_path("decay", {real2(-50, 0, 0, -50)});
    try {
        solve_ivp(decay);
        FAIL("decay flow should have been rejected");
    } catch (const FlowBlowUpError& e) {
        CHECK(std::string(e.what()).find("flow blow-up") != std::string::npos);
        CHECK(e.x > 0.0);
        CHECK(e.x < 1.0);
    }
}

TEST_CASE("dense output interpolates between nodes and looks up on them") {
    FlowGrid coarse{0.0, 1.0, 1.0 / 16, 1e-12};
    auto u = hyperbolic_path();
    auto flow = solve_ivp(u, coarse);

    // on-node queries return the stored matrix, bit for bit
    CHECK(max_abs_entry(flow_value(flow, u, 0.5) - flow.values[8]) == 0.0);

    for (double x : {0.03, 0.41, 0.7, 0.99})
        CHECK(max_abs_entry(flow_value(flow, u, x) - real2(std::exp(x), 0, 0, std::exp(-x))) < 1e-6);

    CHECK_THROWS_AS(flow_value(flow, u, 1.5), FixtureError);
}

TEST_CASE("conjugated sum of commuting diagonals is pointwise addition") {
    auto w = ode_descent_mul(hyperbolic_path(), stretch_path());
    for (double x : {0.0, 0.25, 0.625, 1.0})
        CHECK(max_abs_entry(w.eval(x) - real2(2, 0, 0, 1)) < 1e-12);
}

TEST_CASE("factorization residual vanishes identically when the left path is zero") {
    CHECK(max_residual(zero_path(2), constant_lower_path()) == 0.0);
}

TEST_CASE("factorization identity holds on the polynomial set") {
    auto series = rbivp_residual_series(ramp_upper_path(), constant_lower_path());
    CHECK(series.size() == 1025);
    CHECK(series.front().x == 0.0);
    CHECK(series.front().residual == 0.0);

    auto pool = ode_polynomial_set();
    REQUIRE(pool.size() == 5);
    for (const auto& u : pool)
        for (const auto& v : pool) {
            auto r = check_rbivp(u, v);
            INFO(to_json(r).dump(2));
            CHECK(r.ok());
        }

    // commuting pair: the identity is analytically exact, residual is noise
    CHECK(max_residual(hyperbolic_path(), stretch_path()) < 1e-10);
}

TEST_CASE("halving the step cuts the residual by the fourth-order factor") {
    FlowGrid coarse{0.0, 1.0, 1.0 / 16, 1e-12};
    auto r = check_step_halving(ramp_upper_path(), constant_lower_path(), coarse);
    INFO(to_json(r).dump(2));
    CHECK(r.ok());
    CHECK(r.witness["coarse-residual"].get<double>() > 1e-9);
    CHECK(r.witness["observed-factor"].get<double>() >= 12.0);

    // commuting diagonals still show an honest fourth-order residual, since
    // the stepper's update polynomial is not multiplicative
    auto commuting = check_step_halving(hyperbolic_path(), stretch_path(), coarse);
    INFO(to_json(commuting).dump(2));
    CHECK(commuting.ok());
    CHECK(commuting.witness["observed-factor"].get<double>() >= 12.0);

    // a zero left path makes the residual vanish bitwise; the check must
    // report the uninformative ratio instead of failing on it
    auto noise = check_step_halving(zero_path(2), constant_lower_path(), coarse);
    INFO(to_json(noise).dump(2));
    CHECK(noise.ok());
    CHECK(noise.witness.contains("note"));
}

TEST_CASE("conjugated sum is a group law on random polynomial paths") {
    std::mt19937_64 rng(1203);
    std::vector<CoefficientPath> pool;
    for (int i = 0; i < 3; ++i)
        pool.push_back(random_polynomial_path("random-" + std::to_string(i), 2, 2, rng));
    auto r = check_ode_group(pool);
    INFO(to_json(r).dump(2));
    CHECK(r.ok());
    CHECK(r.witness["max-residual"].get<double>() <= 1e-6);
}

TEST_CASE("grid determinants respect the coefficient-norm window") {
    for (const auto& u : ode_polynomial_set()) {
        auto r = check_flow_determinant(u);
        INFO(u.name << "\n" << to_json(r).dump(2));
        CHECK(r.ok());
    }

    // scalar multiples of the identity attain the window boundary exactly
    auto iso = polynomial_path("isotropic", {real2(2, 0, 0, 2)});
    CHECK(check_flow_determinant(iso).ok());

    std::mt19937_64 rng(1204);
    for (int i = 0; i < 3; ++i) {
        auto u = random_polynomial_path("random-" + std::to_string(i), 2, 2, rng);
        CHECK(check_flow_determinant(u).ok());
    }
}
