#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <limitweight/suite.hpp>

using namespace limitweight;
using nlohmann::json;

namespace {

// Writes a throwaway fixture file next to the test binary and cleans it up.
struct TempJson {
    std::string path;
    TempJson(const std::string& name, const json& j) : path(name) {
        std::ofstream out(path);
        out << j.dump();
    }
    ~TempJson() { std::remove(path.c_str()); }
};

json affine_derivation_json() {
    // [e0, e1] = e0 with the derivation D = diag(1, 0); D[x,y] = [Dx,y] + [x,Dy]
    // holds because the bracket is linear in its e0 slot.
    return json{{"kind", "lie-derivation"},
                {"name", "affine-file"},
                {"bracket",
                 {{{0, 0}, {1, 0}},
                  {{-1, 0}, {0, 0}}}},
                {"operator", {{1, 0}, {0, 0}}},
                {"pair", "power"},
                {"action", "adjoint"}};
}

json stripped(const Report& r) {
    auto j = to_json(r);
    j.erase("timing");
    return j;
}

}  // namespace

TEST_CASE("catalogue lists the documented suites and fixtures") {
    auto fixtures = list_fixtures();
    REQUIRE(fixtures.size() >= 5);
    std::vector<std::string> names;
    for (const auto& f : fixtures) {
        names.push_back(f.name);
        CHECK_FALSE(f.description.empty());
    }
    for (const char* expected : {"heisenberg-rb", "heisenberg-diff", "identity-pair-weight-one",
                                 "scalar-pair-algebra", "ode-polynomial-set"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());

    auto suites = list_suites();
    CHECK(std::find(suites.begin(), suites.end(), "all") != suites.end());
    CHECK(std::find(suites.begin(), suites.end(), "ode-rbivp") != suites.end());
}

TEST_CASE("mode parsing accepts the two modes and rejects the rest") {
    CHECK(parse_suite_mode("random") == SuiteMode::random);
    CHECK(parse_suite_mode("symbolic") == SuiteMode::symbolic);
    CHECK_THROWS_AS(parse_suite_mode("fuzzy"), FixtureError);
}

TEST_CASE("tolerance overrides fall back to the default") {
    SuiteConfig cfg;
    cfg.tolerances["ode-residual"] = 1e-3;
    CHECK(tolerance(cfg, "ode-residual", 1e-6) == 1e-3);
    CHECK(tolerance(cfg, "halving-factor", 12.0) == 12.0);
}

TEST_CASE("reports are deterministic for a fixed config") {
    SuiteConfig cfg;
    cfg.suite = "descent-group";
    cfg.samples = 12;
    cfg.seed = 321;
    auto first = stripped(run_suite(cfg));
    auto second = stripped(run_suite(cfg));
    CHECK(first.dump() == second.dump());

    cfg.seed = 322;
    CHECK(stripped(run_suite(cfg)).dump() == stripped(run_suite(cfg)).dump());
}

TEST_CASE("every suite passes on its default fixture") {
    for (const auto& suite : list_suites()) {
        SuiteConfig cfg;
        cfg.suite = suite;
        cfg.samples = 8;
        cfg.seed = 77;
        INFO(suite << " random");
        auto rep = run_suite(cfg);
        CHECK(rep.all_ok());
        CHECK_FALSE(rep.checks.empty());

        cfg.mode = SuiteMode::symbolic;
        INFO(suite << " symbolic");
        CHECK(run_suite(cfg).all_ok());
    }
}

TEST_CASE("the all suite concatenates the sub-suites with name tags") {
    SuiteConfig cfg;
    cfg.suite = "all";
    cfg.samples = 5;
    cfg.seed = 8;
    auto rep = run_suite(cfg);
    REQUIRE(rep.all_ok());
    bool saw_tangent = false;
    for (const auto& c : rep.checks) {
        CHECK(c.name.find('@') != std::string::npos);
        if (c.name.find("@tangent") != std::string::npos) saw_tangent = true;
    }
    CHECK(saw_tangent);

    cfg.fixture = "heisenberg-rb";
    CHECK_THROWS_AS(run_suite(cfg), FixtureError);
}

TEST_CASE("unknown suites and fixtures are rejected") {
    SuiteConfig cfg;
    cfg.suite = "no-such-suite";
    CHECK_THROWS_AS(run_suite(cfg), FixtureError);

    cfg.suite = "descent-group";
    cfg.fixture = "no-such-fixture";
    CHECK_THROWS_AS(run_suite(cfg), FixtureError);

    cfg.suite = "heisenberg-pregroup";
    cfg.fixture = "identity-pair-weight-one";
    CHECK_THROWS_AS(run_suite(cfg), FixtureError);

    cfg.suite = "novikov";
    cfg.fixture = "heisenberg-rb";
    CHECK_THROWS_AS(run_suite(cfg), FixtureError);
}

TEST_CASE("alternate built-in fixtures run where supported") {
    SuiteConfig cfg;
    cfg.samples = 8;
    cfg.seed = 31;
    cfg.fixture = "identity-pair-weight-one";
    for (const auto& suite : {"descent-group", "tangent", "ybe-braid"}) {
        cfg.suite = suite;
        INFO(suite);
        CHECK(run_suite(cfg).all_ok());
    }
    cfg.suite = "tangent";
    cfg.fixture = "scalar-pair-algebra";
    auto rep = run_suite(cfg);
    CHECK(rep.all_ok());
    CHECK(rep.checks.size() == 3);
}

TEST_CASE("derivation fixtures load from files") {
    TempJson file("suite_test_derivation.json", affine_derivation_json());
    auto fx = lie_diff_fixture_from_json(load_json_file(file.path));
    CHECK(fx.name == "affine-file");
    CHECK(fx.algebra.dim == 2);
    Sampler rng(5);
    CHECK(check_lie_rdiff(fx, rng, 30).ok());

    SuiteConfig cfg;
    cfg.suite = "novikov";
    cfg.fixture = file.path;
    cfg.samples = 20;
    cfg.seed = 6;
    auto rep = run_suite(cfg);
    CHECK(rep.all_ok());
    CHECK(rep.checks.size() == 2);
}

TEST_CASE("bad derivation files are rejected with clear errors") {
    CHECK_THROWS_AS(load_json_file("does-not-exist.json"), FixtureError);

    TempJson not_json("suite_test_bad.json", json());
    {
        std::ofstream out(not_json.path);
        out << "{ this is not json";
    }
    CHECK_THROWS_AS(load_json_file(not_json.path), FixtureError);

    auto good = affine_derivation_json();

    auto wrong_kind = good;
    wrong_kind["kind"] = "something-else";
    CHECK_THROWS_AS(lie_diff_fixture_from_json(wrong_kind), FixtureError);

    auto ragged = good;
    ragged["bracket"][0].erase(1);
    CHECK_THROWS_AS(lie_diff_fixture_from_json(ragged), FixtureError);

    // not antisymmetric: [e1, e0] must be -[e0, e1]
    auto skewless = good;
    skewless["bracket"][1][0] = {1, 0};
    CHECK_THROWS_AS(lie_diff_fixture_from_json(skewless), FixtureError);

    auto bad_pair = good;
    bad_pair["pair"] = "cubic";
    CHECK_THROWS_AS(lie_diff_fixture_from_json(bad_pair), FixtureError);

    auto bad_entry = good;
    bad_entry["operator"][0][0] = "one half-ish";
    CHECK_THROWS_AS(lie_diff_fixture_from_json(bad_entry), FixtureError);
}

TEST_CASE("coefficient path files load and run through the flow suite") {
    json paths{{"kind", "ode-paths"},
               {"paths",
                {{{"name", "upper"}, {"coefficients", {{{0.0, 1.0}, {0.0, 0.0}}}}},
                 {{"name", "ramp"},
                  {"coefficients", {{{0.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.5}, {0.25, 0.0}}}}}}}};
    TempJson file("suite_test_paths.json", paths);
    auto loaded = coefficient_paths_from_json(load_json_file(file.path));
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].name == "upper");
    CHECK(loaded[0].dim == 2);
    CHECK(loaded[1].degree == 1);

    SuiteConfig cfg;
    cfg.suite = "ode-rbivp";
    cfg.fixture = file.path;
    cfg.seed = 40;
    auto rep = run_suite(cfg);
    CHECK(rep.all_ok());

    auto bad = paths;
    bad["paths"][0]["coefficients"][0][0] = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(coefficient_paths_from_json(bad), FixtureError);

    auto empty = paths;
    empty["paths"] = json::array();
    CHECK_THROWS_AS(coefficient_paths_from_json(empty), FixtureError);

    auto text_entry = paths;
    text_entry["paths"][0]["coefficients"][0][0][1] = "fast";
    CHECK_THROWS_AS(coefficient_paths_from_json(text_entry), FixtureError);
}

TEST_CASE("the cross-coefficient check records the finding in its witness") {
    Sampler rng(17);
    auto r = check_novikov_cross_term(rng, 10);
    REQUIRE(r.ok());
    REQUIRE(r.witness.is_object());
    CHECK(r.witness.value("coefficient-one-status", "") == "pass");
    CHECK(r.witness.value("coefficient-half-status", "") == "fail");
    CHECK_FALSE(r.witness.value("finding", "").empty());
}

TEST_CASE("tangent wrappers certify the closed linearizations") {
    auto rb = heisenberg_rb();
    CHECK(check_triangle_tangent_form(rb, heisenberg_b0()).ok());
    auto diff = heisenberg_diff();
    CHECK(check_diff_tangent_operator(diff, heisenberg_d0()).ok());
    CHECK(check_novikov_tangent_form(diff, heisenberg_d0()).ok());
    CHECK(check_tangent_square(diff).ok());

    // a wrong expectation is caught, not silently accepted
    auto not_d0 = heisenberg_d0();
    not_d0(0, 0) = Rational(5);
    CHECK(check_diff_tangent_operator(diff, not_d0).status == CheckStatus::fail);
}

TEST_CASE("round trip between operator and product holds on the heisenberg carrier") {
    Sampler rng(23);
    CHECK(check_diff_novikov_round_trip(heisenberg_diff(), rng, 40).ok());
}

TEST_CASE("the derivation battery passes across the small-algebra pool") {
    Sampler rng(29);
    auto r = check_derivation_battery(12, 4, rng);
    INFO(to_json(r).dump());
    CHECK(r.ok());
}

TEST_CASE("residual tables export as CSV") {
    auto paths = std::vector<CoefficientPath>{zero_path(2), constant_upper_path()};
    FlowGrid g;
    g.step = 1.0 / 8;
    auto rows = rbivp_residual_table(paths, g);
    REQUIRE(rows.size() == 4 * 9);
    std::ostringstream out;
    write_residual_csv(out, rows);
    auto text = out.str();
    CHECK(text.rfind("left,right,x,residual\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 4 * 9);
}

TEST_CASE("log additivity holds for the power pair and detects symbolic failure paths") {
    auto power = PairSpec::power();
    Sampler rng(41);
    CHECK(check_log_additive(power, 3, rng, 30).ok());
    CHECK(check_log_additive(power, 4, rng, 30).ok());
    CHECK(check_log_additive_symbolic(power, 3).ok());
    CHECK(check_log_additive_symbolic(power, 4).ok());
}
