#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "ghznl/scenario_io.hpp"

using namespace ghznl;
using nlohmann::json;

TEST_CASE("a full scenario file parses with 1-based indices converted") {
    const json doc = {
        {"encoding", "dual-rail"},
        {"N", 3},
        {"r", 3},
        {"phi", 0.0},
        {"trusted", {1}},
        {"settings", "mermin"},
        {"selector", "re"},
        {"loss", {{"eta_t", 1.0}, {"eta_u", 0.8}, {"overrides", {{"2", 0.9}}}}},
    };
    const ScenarioFile file = parse_scenario_json(doc);
    CHECK(file.encoding == Encoding::DualRail);
    CHECK(file.sites == 3);
    CHECK(file.trusted == std::vector<int>{0});
    REQUIRE(file.loss.has_value());
    CHECK(file.loss->eta_untrusted == doctest::Approx(0.8));
    CHECK(file.loss->overrides.at(1) == doctest::Approx(0.9));
}

TEST_CASE("unknown keys are rejected") {
    json doc = {{"encoding", "cv-fock"}, {"N", 3}, {"bogus", 1}};
    CHECK_THROWS_WITH_AS(parse_scenario_json(doc), doctest::Contains("bogus"),
                         std::invalid_argument);
    doc = {{"encoding", "cv-fock"}, {"N", 3}, {"loss", {{"eta", 0.5}}}};
    CHECK_THROWS_AS(parse_scenario_json(doc), std::invalid_argument);
}

TEST_CASE("invalid values are rejected") {
    CHECK_THROWS_AS(parse_scenario_json({{"encoding", "cv-fock"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_json({{"encoding", "cv-fock"}, {"N", 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_json({{"encoding", "cv-fock"}, {"N", 3}, {"r", 4}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_json({{"encoding", "cv-fock"}, {"N", 3}, {"trusted", {4}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_json({{"encoding", "cv-fock"}, {"N", 3}, {"trusted", {1, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario_json({{"encoding", "cv-fock"}, {"N", 3}, {"site_order", {1, 2}}}),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_json({{"encoding", "cv-fock"},
                                         {"N", 3},
                                         {"loss", {{"eta_u", 1.5}}}}),
                    std::invalid_argument);
}

TEST_CASE("r defaults to N and tracks swept N") {
    const ScenarioFile file = parse_scenario_json({{"encoding", "dual-rail"}, {"N", 4}});
    CHECK(file.r == 4);
    CHECK(file.r_tracks_sites);

    const auto rows = run_sweep(file, SweepAxis::Sites, 2, 4, 1);
    REQUIRE(rows.size() == 3);
    // Lossless moments: left = 2^(N-1), T = 0 modulus bound never beaten
    // at the margin... left/bound ratio = 2^((N-2)/2).
    CHECK(rows[2].left == doctest::Approx(8.0));
}

TEST_CASE("explicit settings parse per site") {
    const json doc = {{"encoding", "ideal-qubit"},
                      {"N", 2},
                      {"settings",
                       {{{"theta", 0.0}, {"sign", "+"}}, {{"theta", -0.785398}, {"sign", "-"}}}}};
    const ScenarioFile file = parse_scenario_json(doc);
    REQUIRE(file.settings_kind == ScenarioFile::SettingsKind::Explicit);
    CHECK(file.explicit_settings[1].sign == -1);
    CHECK(file.explicit_settings[1].theta == doctest::Approx(-0.785398));
}

TEST_CASE("evaluation dispatches on the encoding") {
    const ScenarioFile qubit = parse_scenario_json(
        {{"encoding", "ideal-qubit"}, {"N", 3}, {"trusted", {1}}, {"selector", "re"}});
    const CriterionReport report = evaluate_scenario(qubit);
    CHECK(report.criterion == "qubit-re");
    CHECK(report.left == doctest::Approx(4.0));
    CHECK(report.violated);

    const ScenarioFile cv = parse_scenario_json(
        {{"encoding", "cv-fock"}, {"N", 3}, {"r", 1}, {"trusted", {1}}});
    const CriterionReport cv_report = evaluate_scenario(cv);
    CHECK(cv_report.criterion == "cv-product-moment");
    CHECK(cv_report.ratio == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("eta_u sweeps flip at the steering threshold") {
    const ScenarioFile file = parse_scenario_json({{"encoding", "dual-rail"},
                                                   {"N", 3},
                                                   {"trusted", {1}},
                                                   {"selector", "re"},
                                                   {"loss", {{"eta_t", 1.0}, {"eta_u", 1.0}}}});
    const auto rows = run_sweep(file, SweepAxis::EtaU, 0.5, 1.0, 0.05);
    REQUIRE(rows.size() == 11);
    for (const auto& row : rows) {
        const bool expected = row.axis_value > 1.0 / std::sqrt(2.0);
        CHECK(row.violated == expected);
    }
}

TEST_CASE("N sweeps on the CV steering scenario carry the threshold column") {
    const ScenarioFile file = parse_scenario_json(
        {{"encoding", "cv-fock"}, {"N", 3}, {"r", 1}, {"trusted", {1}}});
    const auto rows = run_sweep(file, SweepAxis::Sites, 3, 6, 1);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int n = 3 + static_cast<int>(i);
        REQUIRE(rows[i].threshold.has_value());
        CHECK(*rows[i].threshold == doctest::Approx(0.5 * std::exp2(1.0 / (n - 1))));
    }
}

TEST_CASE("empty sweep ranges produce a header-only table") {
    const ScenarioFile file = parse_scenario_json({{"encoding", "dual-rail"}, {"N", 3}});
    const auto rows = run_sweep(file, SweepAxis::EtaU, 1.0, 0.5, 0.05);
    CHECK(rows.empty());
    CHECK(sweep_csv(rows, false) == "axis_value,left,bound,ratio,violated\n");
}

TEST_CASE("threshold solving picks the matching closed form") {
    const ScenarioFile cv = parse_scenario_json(
        {{"encoding", "cv-fock"}, {"N", 3}, {"r", 1}, {"trusted", {1}}});
    const ThresholdPair pair = solve_thresholds(cv);
    REQUIRE(pair.closed_form.has_value());
    REQUIRE(pair.bisection.has_value());
    CHECK(pair.closed_form->eta_min == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(pair.closed_form->eta_min - pair.bisection->eta_min) < kOracleTol);

    const ScenarioFile dual = parse_scenario_json(
        {{"encoding", "dual-rail"}, {"N", 3}, {"trusted", {1}}});
    const ThresholdPair dual_pair = solve_thresholds(dual);
    REQUIRE(dual_pair.closed_form.has_value());
    CHECK(dual_pair.closed_form->eta_min == doctest::Approx(std::sqrt(0.5)));

    const ScenarioFile all_trusted = parse_scenario_json(
        {{"encoding", "dual-rail"}, {"N", 2}, {"trusted", {1, 2}}});
    CHECK_THROWS_WITH_AS(solve_thresholds(all_trusted), doctest::Contains("no untrusted"),
                         std::invalid_argument);
}

TEST_CASE("CV T=2 r=2 scenarios resolve to the any-positive claim") {
    const ScenarioFile file = parse_scenario_json(
        {{"encoding", "cv-fock"}, {"N", 4}, {"r", 2}, {"trusted", {1, 3}}});
    const ThresholdPair pair = solve_thresholds(file);
    REQUIRE(pair.closed_form.has_value());
    CHECK(pair.closed_form->kind == ThresholdResult::Kind::AnyPositive);
}

TEST_CASE("formatting is stable") {
    CHECK(format_g9(0.5) == "0.5");
    CHECK(format_g9(1.0 / std::sqrt(2.0)) == "0.707106781");
    CHECK(format_g9(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_g9(std::nan("")) == "nan");

    SweepRow row;
    row.axis_value = 0.75;
    row.left = 2.0;
    row.bound = std::sqrt(2.0);
    row.ratio = 2.0 / std::sqrt(2.0);
    row.violated = true;
    CHECK(sweep_csv({row}, false) ==
          "axis_value,left,bound,ratio,violated\n0.75,2,1.41421356,1.41421356,true\n");
}

TEST_CASE("reports serialise to JSON with class labels") {
    const ScenarioFile file = parse_scenario_json(
        {{"encoding", "ideal-qubit"}, {"N", 3}, {"trusted", {1}}});
    const json doc = report_to_json(evaluate_scenario(file));
    CHECK(doc.at("class") == "multipartite-EPR-steering");
    CHECK(doc.at("violated") == true);
}
