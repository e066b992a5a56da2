// Command-line front end: scenario files in, criterion reports and sweep
// tables out.
//
//   ghznl evaluate  --scenario s.json [--format json] [--out path]
//   ghznl sweep     --scenario s.json --axis eta_u --from 0.5 --to 1 --step 0.05
//   ghznl oracle    --N 3 --T 0 --selector re
//   ghznl threshold --scenario s.json
//
// Exit codes: 0 success, 1 oracle disagreement, 2 invalid input.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ghznl/criteria.hpp"
#include "ghznl/lhv_oracle.hpp"
#include "ghznl/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOracleDisagreement = 1;
constexpr int kExitInvalidInput = 2;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write output file '" + out_path + "'");
    }
    out << text;
}

std::string render_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

int run_evaluate(const std::string& scenario_path, const std::string& format,
                 const std::string& out_path) {
    const ghznl::ScenarioFile file = ghznl::load_scenario_file(scenario_path);
    const ghznl::CriterionReport report = ghznl::evaluate_scenario(file);
    if (format == "csv") {
        std::string text = "criterion,left,bound,ratio,violated,class\n";
        text += report.criterion + ',' + ghznl::format_g9(report.left) + ',' +
                ghznl::format_g9(report.bound) + ',' + ghznl::format_g9(report.ratio) + ',' +
                (report.violated ? "true" : "false") + ',' + ghznl::to_string(report.cls) + '\n';
        write_output(text, out_path);
    } else {
        write_output(render_json(ghznl::report_to_json(report)), out_path);
    }
    return kExitOk;
}

int run_sweep(const std::string& scenario_path, const std::string& axis_name, double from,
              double to, double step, const std::string& format, const std::string& out_path) {
    const ghznl::ScenarioFile file = ghznl::load_scenario_file(scenario_path);
    const ghznl::SweepAxis axis = ghznl::parse_axis(axis_name);
    const auto rows = ghznl::run_sweep(file, axis, from, to, step);
    const bool threshold_column = axis == ghznl::SweepAxis::Sites;
    if (format == "json") {
        write_output(render_json(ghznl::sweep_to_json(rows, threshold_column)), out_path);
    } else {
        write_output(ghznl::sweep_csv(rows, threshold_column), out_path);
    }
    return kExitOk;
}

int run_oracle(int sites, int trusted_count, const std::string& selector_name,
               int phase_resolution, const std::string& format, const std::string& out_path) {
    const ghznl::Selector selector = ghznl::parse_selector(selector_name);
    if (trusted_count < 0 || trusted_count > sites) {
        throw std::invalid_argument("oracle: T must lie in 0..N");
    }
    const double brute = trusted_count == 0
                             ? ghznl::lhv_max(sites, selector)
                             : ghznl::lhs_max(sites, trusted_count, selector, phase_resolution);
    const double closed = ghznl::qubit_bound(sites, trusted_count, selector);
    const double difference = std::abs(brute - closed);
    const bool agree = difference <= ghznl::kOracleTol;

    if (format == "csv") {
        std::string text = "N,T,selector,brute_force,closed_form,agree\n";
        text += std::to_string(sites) + ',' + std::to_string(trusted_count) + ',' +
                selector_name + ',' + ghznl::format_g9(brute) + ',' + ghznl::format_g9(closed) +
                ',' + (agree ? "true" : "false") + '\n';
        write_output(text, out_path);
    } else {
        write_output(render_json(nlohmann::json{{"N", sites},
                                                {"T", trusted_count},
                                                {"selector", selector_name},
                                                {"brute_force", brute},
                                                {"closed_form", closed},
                                                {"difference", difference},
                                                {"agree", agree}}),
                     out_path);
    }
    if (!agree) {
        std::cerr << "oracle: brute-force bound " << ghznl::format_g9(brute)
                  << " disagrees with closed form " << ghznl::format_g9(closed) << "\n";
        return kExitOracleDisagreement;
    }
    return kExitOk;
}

int run_threshold(const std::string& scenario_path, const std::string& format,
                  const std::string& out_path) {
    const ghznl::ScenarioFile file = ghznl::load_scenario_file(scenario_path);
    const ghznl::ThresholdPair pair = ghznl::solve_thresholds(file);
    if (format == "csv") {
        std::string text = "method,kind,eta_min,residual\n";
        for (const auto* result : {&pair.closed_form, &pair.bisection}) {
            if (!result->has_value()) continue;
            const ghznl::ThresholdResult& r = **result;
            const char* kind = r.kind == ghznl::ThresholdResult::Kind::Value ? "value"
                               : r.kind == ghznl::ThresholdResult::Kind::AnyPositive
                                   ? "any-positive"
                                   : "none";
            text += r.method + ',' + kind + ',' + ghznl::format_g9(r.eta_min) + ',' +
                    ghznl::format_g9(r.residual) + '\n';
        }
        write_output(text, out_path);
    } else {
        write_output(render_json(ghznl::threshold_pair_to_json(pair)), out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unified multipartite nonlocality criteria on GHZ-type states"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format, axis_name, selector_name = "re";
    double from = 0.0, to = 0.0, step = 1.0;
    int sites = 0, trusted_count = 0, phase_resolution = 512;

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one criterion for a scenario file");
    evaluate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    evaluate->add_option("--format", format, "Output format (default json)")
        ->check(CLI::IsMember({"csv", "json"}));
    evaluate->add_option("--out", out_path, "Write output to a file instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "Evaluate along one axis and emit a table");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON template")->required();
    sweep->add_option("--axis", axis_name, "Axis: eta_u, N, T or r")->required();
    sweep->add_option("--from", from, "First grid value")->required();
    sweep->add_option("--to", to, "Last grid value")->required();
    sweep->add_option("--step", step, "Grid step")->default_val(1.0);
    sweep->add_option("--format", format, "Output format (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out_path, "Write output to a file instead of stdout");

    auto* oracle = app.add_subcommand(
        "oracle", "Compare the brute-force classical bound with the closed form");
    oracle->add_option("--N", sites, "Number of sites")->required();
    oracle->add_option("--T", trusted_count, "Number of trusted sites")->required();
    oracle->add_option("--selector", selector_name, "re, im, re+im or modulus")
        ->default_val("re");
    oracle->add_option("--phase-resolution", phase_resolution,
                       "Grid points for the trusted aggregate phase (>= 256)")
        ->default_val(512);
    oracle->add_option("--format", format, "Output format (default json)")
        ->check(CLI::IsMember({"csv", "json"}));
    oracle->add_option("--out", out_path, "Write output to a file instead of stdout");

    auto* threshold =
        app.add_subcommand("threshold", "Solve the minimal detection efficiency for a scenario");
    threshold->add_option("--scenario", scenario_path, "Scenario JSON template")->required();
    threshold->add_option("--format", format, "Output format (default json)")
        ->check(CLI::IsMember({"csv", "json"}));
    threshold->add_option("--out", out_path, "Write output to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (evaluate->parsed()) {
            return run_evaluate(scenario_path, format.empty() ? "json" : format, out_path);
        }
        if (sweep->parsed()) {
            return run_sweep(scenario_path, axis_name, from, to, step,
                             format.empty() ? "csv" : format, out_path);
        }
        if (oracle->parsed()) {
            return run_oracle(sites, trusted_count, selector_name, phase_resolution,
                              format.empty() ? "json" : format, out_path);
        }
        if (threshold->parsed()) {
            return run_threshold(scenario_path, format.empty() ? "json" : format, out_path);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
