// Command-line front end for the verification suites.
//
//   limitweight verify <suite> [--fixture F] [--samples N] [--seed S]
//                      [--mode random|symbolic] [--tol key=value]
//                      [--report out.json]
//   limitweight list
//   limitweight ode run [--fixture F] [--tol key=value] [--report out.json]
//                       [--csv residuals.csv]
//
// Every flag can also be set through the environment with the LIMITWEIGHT_
// prefix (LIMITWEIGHT_SAMPLES, LIMITWEIGHT_SEED, ...); explicit flags win.
// Exit codes: 0 all checks passed, 1 at least one failed, 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <limitweight/suite.hpp>

namespace {

using limitweight::SuiteConfig;

// "key=value" pairs for --tol; repeated flags accumulate.
void apply_tolerances(SuiteConfig& cfg, const std::vector<std::string>& specs) {
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--tol", "expected key=value, got \"" + s + "\"");
        try {
            cfg.tolerances[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--tol", "not a number: \"" + s.substr(eq + 1) + "\"");
        }
    }
}

void write_report(const limitweight::Report& rep, const std::string& path) {
    auto j = limitweight::to_json(rep);
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw limitweight::FixtureError("cannot write report to " + path);
    out << j.dump(2) << '\n';
}

// The summary moves to stderr when stdout is carrying the report or CSV, so
// piped output stays machine-readable.
void print_summary(const limitweight::Report& rep, bool stdout_taken) {
    std::ostream& out = stdout_taken ? std::cerr : std::cout;
    for (const auto& c : rep.checks)
        out << "  [" << to_string(c.status) << "] " << c.name << '\n';
    out << rep.suite << ": " << (rep.all_ok() ? "pass" : "FAIL") << " (" << rep.checks.size()
        << " checks, " << rep.elapsed_ms << " ms)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suites for limit-weighted operator structures"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string report_path;
    std::string csv_path;
    std::vector<std::string> tol_specs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fixture", cfg.fixture, "built-in fixture name or a .json file")
            ->envname("LIMITWEIGHT_FIXTURE");
        sub->add_option("--samples", cfg.samples, "random samples per check")
            ->envname("LIMITWEIGHT_SAMPLES")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "sampler seed")->envname("LIMITWEIGHT_SEED");
        sub->add_option("--tol", tol_specs, "tolerance override as key=value, repeatable")
            ->envname("LIMITWEIGHT_TOL");
        sub->add_option("--report", report_path, "write the JSON report here (- for stdout)")
            ->envname("LIMITWEIGHT_REPORT");
    };

    auto* verify = app.add_subcommand("verify", "run one suite and report pass or fail");
    verify->add_option("suite", cfg.suite, "suite name (see list)")->required();
    std::string mode_name = "random";
    verify->add_option("--mode", mode_name, "random or symbolic")
        ->envname("LIMITWEIGHT_MODE")
        ->check(CLI::IsMember({"random", "symbolic"}));
    add_common(verify);

    auto* list = app.add_subcommand("list", "list suites and built-in fixtures");

    auto* ode = app.add_subcommand("ode", "flow factorization tools");
    auto* ode_run = ode->add_subcommand("run", "run the flow suite, optionally exporting residuals");
    add_common(ode_run);
    ode_run->add_option("--csv", csv_path, "write per-grid-point residuals as CSV")
        ->envname("LIMITWEIGHT_CSV");
    ode->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_tolerances(cfg, tol_specs);

        if (list->parsed()) {
            std::cout << "suites:\n";
            for (const auto& s : limitweight::list_suites()) std::cout << "  " << s << '\n';
            std::cout << "fixtures:\n";
            for (const auto& f : limitweight::list_fixtures())
                std::cout << "  " << f.name << "  " << f.description << '\n';
            return 0;
        }

        if (verify->parsed()) {
            cfg.mode = limitweight::parse_suite_mode(mode_name);
            auto rep = limitweight::run_suite(cfg);
            if (!report_path.empty()) write_report(rep, report_path);
            print_summary(rep, report_path == "-");
            return rep.all_ok() ? 0 : 1;
        }

        // ode run
        cfg.suite = "ode-rbivp";
        auto rep = limitweight::run_suite(cfg);
        if (!csv_path.empty()) {
            auto paths = limitweight::detail::is_fixture_file(rep.fixture)
                             ? limitweight::coefficient_paths_from_json(
                                   limitweight::load_json_file(rep.fixture))
                             : limitweight::ode_polynomial_set();
            auto rows = limitweight::rbivp_residual_table(paths);
            if (csv_path == "-") {
                limitweight::write_residual_csv(std::cout, rows);
            } else {
                std::ofstream out(csv_path);
                if (!out) throw limitweight::FixtureError("cannot write CSV to " + csv_path);
                limitweight::write_residual_csv(out, rows);
            }
        }
        if (!report_path.empty()) write_report(rep, report_path);
        print_summary(rep, report_path == "-" || csv_path == "-");
        return rep.all_ok() ? 0 : 1;
    } catch (const limitweight::FixtureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const limitweight::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
