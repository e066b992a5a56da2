#include "ghznl/scenario_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ghznl {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw std::invalid_argument("scenario: unknown key '" + key + "' in " + where);
        }
    }
}

int require_int(const json& value, const std::string& what) {
    if (!value.is_number_integer()) {
        throw std::invalid_argument("scenario: " + what + " must be an integer");
    }
    return value.get<int>();
}

double require_number(const json& value, const std::string& what) {
    if (!value.is_number()) {
        throw std::invalid_argument("scenario: " + what + " must be a number");
    }
    return value.get<double>();
}

int parse_site_index(const json& value, int sites, const std::string& what) {
    const int site = require_int(value, what);
    if (site < 1 || site > sites) {
        throw std::invalid_argument("scenario: " + what + " " + std::to_string(site) +
                                    " out of range 1.." + std::to_string(sites));
    }
    return site - 1;
}

int parse_sign(const json& value) {
    if (value.is_string()) {
        const std::string s = value.get<std::string>();
        if (s == "+") return +1;
        if (s == "-") return -1;
    }
    throw std::invalid_argument("scenario: sign must be \"+\" or \"-\"");
}

LossModel parse_loss(const json& obj, int sites) {
    reject_unknown_keys(obj, {"eta_t", "eta_u", "overrides"}, "loss");
    LossModel model;
    if (obj.contains("eta_t")) model.eta_trusted = require_number(obj["eta_t"], "loss.eta_t");
    if (obj.contains("eta_u")) model.eta_untrusted = require_number(obj["eta_u"], "loss.eta_u");
    for (double eta : {model.eta_trusted, model.eta_untrusted}) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw std::invalid_argument("scenario: loss efficiencies must lie in [0,1]");
        }
    }
    if (obj.contains("overrides")) {
        if (!obj["overrides"].is_object()) {
            throw std::invalid_argument("scenario: loss.overrides must map site -> efficiency");
        }
        for (const auto& [key, value] : obj["overrides"].items()) {
            int site = 0;
            try {
                site = std::stoi(key);
            } catch (const std::exception&) {
                throw std::invalid_argument("scenario: loss.overrides key '" + key +
                                            "' is not a site index");
            }
            if (site < 1 || site > sites) {
                throw std::invalid_argument("scenario: loss override for nonexistent site " + key);
            }
            const double eta = require_number(value, "loss.overrides[" + key + "]");
            if (!(eta >= 0.0 && eta <= 1.0)) {
                throw std::invalid_argument("scenario: loss override out of [0,1]");
            }
            model.overrides[site - 1] = eta;
        }
    }
    return model;
}

double solved_threshold_value(const ThresholdPair& pair);

}  // namespace

ScenarioFile parse_scenario_json(const json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("scenario: document root must be an object");
    }
    reject_unknown_keys(doc,
                        {"encoding", "N", "r", "phi", "trusted", "site_order", "settings",
                         "selector", "loss"},
                        "scenario");
    if (!doc.contains("encoding") || !doc.contains("N")) {
        throw std::invalid_argument("scenario: 'encoding' and 'N' are required");
    }

    ScenarioFile file;
    file.encoding = parse_encoding(doc["encoding"].get<std::string>());
    file.sites = require_int(doc["N"], "N");
    if (file.sites < 2) {
        throw std::invalid_argument("scenario: N must be at least 2");
    }

    if (doc.contains("r")) {
        if (doc["r"].is_string() && doc["r"].get<std::string>() == "N") {
            file.r = file.sites;
            file.r_tracks_sites = true;
        } else {
            file.r = require_int(doc["r"], "r");
        }
    } else {
        file.r = file.sites;
        file.r_tracks_sites = true;
    }
    if (file.r < 1 || file.r > file.sites) {
        throw std::invalid_argument("scenario: r must lie in 1..N");
    }

    if (doc.contains("phi")) file.phi = require_number(doc["phi"], "phi");

    if (doc.contains("trusted")) {
        if (!doc["trusted"].is_array()) {
            throw std::invalid_argument("scenario: trusted must be a list of site indices");
        }
        std::set<int> seen;
        for (const auto& entry : doc["trusted"]) {
            const int site = parse_site_index(entry, file.sites, "trusted site");
            if (!seen.insert(site).second) {
                throw std::invalid_argument("scenario: duplicate trusted site " +
                                            std::to_string(site + 1));
            }
            file.trusted.push_back(site);
        }
    }

    if (doc.contains("site_order")) {
        if (!doc["site_order"].is_array() ||
            static_cast<int>(doc["site_order"].size()) != file.sites) {
            throw std::invalid_argument("scenario: site_order must list all N sites");
        }
        for (const auto& entry : doc["site_order"]) {
            file.site_order.push_back(parse_site_index(entry, file.sites, "site_order entry"));
        }
    }

    if (doc.contains("settings")) {
        const json& settings = doc["settings"];
        if (settings.is_string()) {
            const std::string name = settings.get<std::string>();
            if (name == "mermin") {
                file.settings_kind = ScenarioFile::SettingsKind::Mermin;
            } else if (name == "ardehali") {
                file.settings_kind = ScenarioFile::SettingsKind::Ardehali;
            } else {
                throw std::invalid_argument("scenario: settings must be mermin, ardehali or a "
                                            "per-site list");
            }
        } else if (settings.is_array()) {
            if (static_cast<int>(settings.size()) != file.sites) {
                throw std::invalid_argument("scenario: explicit settings need one entry per site");
            }
            file.settings_kind = ScenarioFile::SettingsKind::Explicit;
            for (const auto& entry : settings) {
                if (!entry.is_object()) {
                    throw std::invalid_argument("scenario: settings entries must be objects");
                }
                reject_unknown_keys(entry, {"theta", "sign"}, "settings entry");
                FSpec spec;
                if (entry.contains("theta")) spec.theta = require_number(entry["theta"], "theta");
                if (entry.contains("sign")) spec.sign = parse_sign(entry["sign"]);
                file.explicit_settings.push_back(spec);
            }
        } else {
            throw std::invalid_argument("scenario: settings must be a string or a list");
        }
    }

    if (doc.contains("selector")) {
        file.selector = parse_selector(doc["selector"].get<std::string>());
    }
    if (doc.contains("loss")) {
        if (!doc["loss"].is_object()) {
            throw std::invalid_argument("scenario: loss must be an object");
        }
        file.loss = parse_loss(doc["loss"], file.sites);
    }
    return file;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("scenario: cannot open '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("scenario: '" + path + "' is not valid JSON: " + err.what());
    }
    return parse_scenario_json(doc);
}

GhzSpec to_ghz_spec(const ScenarioFile& file) {
    GhzSpec spec;
    spec.sites = file.sites;
    spec.r = file.r;
    spec.phi = file.phi;
    spec.encoding = file.encoding;
    spec.site_order = file.site_order;
    return spec;
}

Scenario to_scenario(const ScenarioFile& file) {
    Scenario scenario;
    scenario.sites = file.sites;
    scenario.trusted.insert(file.trusted.begin(), file.trusted.end());
    scenario.encoding = file.encoding;
    scenario.loss = file.loss;
    scenario.validate();
    return scenario;
}

SettingBundle to_bundle(const ScenarioFile& file) {
    switch (file.settings_kind) {
        case ScenarioFile::SettingsKind::Mermin:
            return mermin_settings(file.sites, file.encoding);
        case ScenarioFile::SettingsKind::Ardehali:
            return ardehali_settings(file.sites, file.encoding);
        case ScenarioFile::SettingsKind::Explicit: {
            SettingBundle bundle;
            bundle.encoding = file.encoding;
            bundle.sites = file.explicit_settings;
            return bundle;
        }
    }
    throw std::logic_error("to_bundle: unknown settings kind");
}

CriterionReport evaluate_scenario(const ScenarioFile& file) {
    const RankTwoState state = build_ghz(to_ghz_spec(file));
    const Scenario scenario = to_scenario(file);
    if (file.encoding == Encoding::CvFock) {
        return cv_criterion(state, scenario, default_cv_signs(to_ghz_spec(file)));
    }
    return qubit_criterion(state, scenario, to_bundle(file), file.selector);
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "eta_u") return SweepAxis::EtaU;
    if (name == "N") return SweepAxis::Sites;
    if (name == "T") return SweepAxis::Trusted;
    if (name == "r") return SweepAxis::BlockSize;
    throw std::invalid_argument("sweep: unknown axis '" + name +
                                "' (expected eta_u, N, T or r)");
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::EtaU: return "eta_u";
        case SweepAxis::Sites: return "N";
        case SweepAxis::Trusted: return "T";
        case SweepAxis::BlockSize: return "r";
    }
    throw std::logic_error("to_string: unknown axis");
}

namespace {

int axis_as_int(double value, const char* what) {
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-9) {
        throw std::invalid_argument(std::string("sweep: axis ") + what +
                                    " requires integer grid values");
    }
    return static_cast<int>(rounded);
}

ScenarioFile scenario_at(const ScenarioFile& base, SweepAxis axis, double value) {
    ScenarioFile point = base;
    switch (axis) {
        case SweepAxis::EtaU: {
            if (!point.loss) point.loss = LossModel{};
            point.loss->eta_untrusted = value;
            break;
        }
        case SweepAxis::Sites: {
            point.sites = axis_as_int(value, "N");
            if (point.sites < 2) throw std::invalid_argument("sweep: N must be at least 2");
            if (point.r_tracks_sites) {
                point.r = point.sites;
            } else if (point.r > point.sites) {
                throw std::invalid_argument("sweep: template r exceeds swept N");
            }
            for (int site : point.trusted) {
                if (site >= point.sites) {
                    throw std::invalid_argument("sweep: trusted site outside swept N");
                }
            }
            if (!point.site_order.empty()) {
                throw std::invalid_argument("sweep: site_order cannot be swept along N");
            }
            if (point.settings_kind == ScenarioFile::SettingsKind::Explicit) {
                throw std::invalid_argument("sweep: explicit settings cannot be swept along N");
            }
            break;
        }
        case SweepAxis::Trusted: {
            const int t = axis_as_int(value, "T");
            if (t < 0 || t > point.sites) {
                throw std::invalid_argument("sweep: T out of range 0..N");
            }
            point.trusted.clear();
            for (int j = 0; j < t; ++j) point.trusted.push_back(j);
            break;
        }
        case SweepAxis::BlockSize: {
            point.r = axis_as_int(value, "r");
            point.r_tracks_sites = false;
            if (point.r < 1 || point.r > point.sites) {
                throw std::invalid_argument("sweep: r out of range 1..N");
            }
            break;
        }
    }
    return point;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioFile& file, SweepAxis axis, double from, double to,
                                double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("sweep: step must be positive");
    }
    std::vector<double> grid;
    for (long i = 0;; ++i) {
        double v = from + i * step;
        if (v > to + 1e-9 * step) break;
        if (axis == SweepAxis::EtaU) {
            // Snap accumulated rounding back into [0, 1].
            if (std::abs(v) < 1e-12) v = 0.0;
            if (std::abs(v - 1.0) < 1e-12) v = 1.0;
        }
        grid.push_back(v);
    }

    std::vector<SweepRow> rows(grid.size());
    // Grid points are independent; output ordering is fixed by the index.
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) if (grid.size() > 1)
    for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
        try {
            const ScenarioFile point = scenario_at(file, axis, grid[i]);
            const CriterionReport report = evaluate_scenario(point);
            SweepRow row;
            row.axis_value = grid[i];
            row.left = report.left;
            row.bound = report.bound;
            row.ratio = report.ratio;
            row.violated = report.violated;
            if (axis == SweepAxis::Sites) {
                row.threshold = solved_threshold_value(solve_thresholds(point));
            }
            rows[i] = row;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

ThresholdPair solve_thresholds(const ScenarioFile& file) {
    const Scenario scenario = to_scenario(file);
    const int n = file.sites;
    const int t = scenario.T();
    const double eta_t = file.loss ? file.loss->eta_trusted : 1.0;

    ThresholdPair pair;
    if (file.encoding == Encoding::CvFock) {
        const std::vector<int> order = to_ghz_spec(file).effective_order();
        std::set<int> block;
        for (int j = 0; j < file.r; ++j) block.insert(order[j]);

        if (t == 1 && file.r <= n - 1 && block.count(*scenario.trusted.begin())) {
            pair.closed_form = cv_steering_threshold(n, file.r);
        } else if (t >= 2 && file.r >= 2 && file.r <= n - 1) {
            // Any-eta claim: applies when the trusted set straddles the blocks.
            bool in_block = false, out_block = false;
            for (int site : scenario.trusted) (block.count(site) ? in_block : out_block) = true;
            if (in_block && out_block) {
                pair.closed_form = cv_t2_threshold(n, t, file.r);
            }
        }
        pair.bisection =
            bisection_threshold(cv_family(n, scenario.trusted, file.r, eta_t));
        if (pair.bisection) {
            pair.bisection->inputs =
                ThresholdInputs{n, t, file.r, Encoding::CvFock, Selector::Modulus};
        }
    } else if (file.encoding == Encoding::DualRail) {
        if (t == n) {
            throw std::invalid_argument("threshold: no untrusted site when T = N");
        }
        pair.closed_form = qubit_threshold(n, t);
        pair.bisection = bisection_threshold(qubit_family(n, t, Selector::Modulus, eta_t));
        if (pair.bisection) {
            pair.bisection->inputs =
                ThresholdInputs{n, t, n, Encoding::DualRail, Selector::Modulus};
        }
    } else {
        throw std::invalid_argument(
            "threshold: loss is not applicable to ideal-qubit; use dual-rail");
    }
    return pair;
}

namespace {

double solved_threshold_value(const ThresholdPair& pair) {
    const ThresholdResult& result = pair.closed_form ? *pair.closed_form : *pair.bisection;
    switch (result.kind) {
        case ThresholdResult::Kind::Value: return result.eta_min;
        case ThresholdResult::Kind::AnyPositive: return 0.0;
        case ThresholdResult::Kind::NoneInBracket: return std::nan("");
    }
    throw std::logic_error("threshold: unknown result kind");
}

const char* kind_name(ThresholdResult::Kind kind) {
    switch (kind) {
        case ThresholdResult::Kind::Value: return "value";
        case ThresholdResult::Kind::AnyPositive: return "any-positive";
        case ThresholdResult::Kind::NoneInBracket: return "none";
    }
    throw std::logic_error("threshold: unknown result kind");
}

}  // namespace

std::string format_g9(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool threshold_column) {
    std::string out = "axis_value,left,bound,ratio,violated";
    if (threshold_column) out += ",threshold";
    out += '\n';
    for (const auto& row : rows) {
        out += format_g9(row.axis_value);
        out += ',';
        out += format_g9(row.left);
        out += ',';
        out += format_g9(row.bound);
        out += ',';
        out += format_g9(row.ratio);
        out += ',';
        out += row.violated ? "true" : "false";
        if (threshold_column) {
            out += ',';
            out += format_g9(row.threshold.value_or(std::nan("")));
        }
        out += '\n';
    }
    return out;
}

namespace {

json number_or_inf(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    return value;
}

}  // namespace

json sweep_to_json(const std::vector<SweepRow>& rows, bool threshold_column) {
    json out = json::array();
    for (const auto& row : rows) {
        json entry = {{"axis_value", row.axis_value}, {"left", row.left},
                      {"bound", row.bound},           {"ratio", number_or_inf(row.ratio)},
                      {"violated", row.violated}};
        if (threshold_column) {
            entry["threshold"] = number_or_inf(row.threshold.value_or(std::nan("")));
        }
        out.push_back(entry);
    }
    return out;
}

json report_to_json(const CriterionReport& report) {
    return json{{"criterion", report.criterion},
                {"left", report.left},
                {"bound", report.bound},
                {"ratio", number_or_inf(report.ratio)},
                {"violated", report.violated},
                {"class", to_string(report.cls)},
                {"bound_oracle_verified", report.bound_oracle_verified}};
}

json threshold_to_json(const ThresholdResult& result) {
    json out{{"kind", kind_name(result.kind)},
             {"eta_min", number_or_inf(result.eta_min)},
             {"method", result.method},
             {"residual", result.residual},
             {"inputs",
              {{"N", result.inputs.sites},
               {"T", result.inputs.trusted_count},
               {"r", result.inputs.r},
               {"encoding", to_string(result.inputs.encoding)},
               {"selector", to_string(result.inputs.selector)}}}};
    if (!result.note.empty()) out["note"] = result.note;
    return out;
}

json threshold_pair_to_json(const ThresholdPair& pair) {
    json out = json::object();
    if (pair.closed_form) out["closed_form"] = threshold_to_json(*pair.closed_form);
    if (pair.bisection) out["bisection"] = threshold_to_json(*pair.bisection);
    if (pair.closed_form && pair.bisection &&
        pair.closed_form->kind == ThresholdResult::Kind::Value &&
        pair.bisection->kind == ThresholdResult::Kind::Value) {
        out["difference"] = std::abs(pair.closed_form->eta_min - pair.bisection->eta_min);
    }
    return out;
}

}  // namespace ghznl
