#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ghznl/criteria.hpp"
#include "ghznl/ghz.hpp"
#include "ghznl/thresholds.hpp"

namespace ghznl {

/// Parsed scenario document. Site indices are 1-based in files and 0-based
/// here; unknown keys are rejected at parse time.
struct ScenarioFile {
    Encoding encoding = Encoding::CvFock;
    int sites = 0;
    int r = 0;
    bool r_tracks_sites = false;  // file had "r": "N"
    double phi = 0.0;
    std::vector<int> trusted;     // 0-based
    std::vector<int> site_order;  // 0-based; empty = identity

    enum class SettingsKind { Mermin, Ardehali, Explicit };
    SettingsKind settings_kind = SettingsKind::Mermin;
    std::vector<FSpec> explicit_settings;

    Selector selector = Selector::Re;
    std::optional<LossModel> loss;
};

ScenarioFile parse_scenario_json(const nlohmann::json& doc);
ScenarioFile load_scenario_file(const std::string& path);

GhzSpec to_ghz_spec(const ScenarioFile& file);
Scenario to_scenario(const ScenarioFile& file);
SettingBundle to_bundle(const ScenarioFile& file);

/// Runs the criterion the file's encoding selects (CV product-moment
/// criterion for cv-fock, dichotomic criterion otherwise).
CriterionReport evaluate_scenario(const ScenarioFile& file);

// --- sweeps -------------------------------------------------------------------

enum class SweepAxis { EtaU, Sites, Trusted, BlockSize };
SweepAxis parse_axis(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepRow {
    double axis_value = 0.0;
    double left = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool violated = false;
    std::optional<double> threshold;  // axis = N only
};

/// Evaluates the scenario along one axis. Rows may be computed in parallel;
/// output order is the grid order regardless. The N axis additionally
/// solves the per-point efficiency threshold.
std::vector<SweepRow> run_sweep(const ScenarioFile& file, SweepAxis axis, double from, double to,
                                double step);

// --- threshold solving --------------------------------------------------------

struct ThresholdPair {
    std::optional<ThresholdResult> closed_form;
    std::optional<ThresholdResult> bisection;
};

/// Closed form (when the scenario matches one) plus bisection on the
/// simulated criterion. Dual-rail bisection uses the modulus criterion,
/// whose bound 2^((N-T)/2) eta_t^T matches the closed form for every T.
ThresholdPair solve_thresholds(const ScenarioFile& file);

// --- output formatting ---------------------------------------------------------

/// 9 significant digits, '.' decimal separator; "inf"/"nan" spelled out.
std::string format_g9(double value);

std::string sweep_csv(const std::vector<SweepRow>& rows, bool threshold_column);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows, bool threshold_column);
nlohmann::json report_to_json(const CriterionReport& report);
nlohmann::json threshold_to_json(const ThresholdResult& result);
nlohmann::json threshold_pair_to_json(const ThresholdPair& pair);

}  // namespace ghznl
