#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghznl/thresholds.hpp"

using namespace ghznl;

TEST_CASE("CV steering threshold closed forms") {
    const ThresholdResult n3 = cv_steering_threshold(3, 1);
    CHECK(n3.kind == ThresholdResult::Kind::Value);
    CHECK(n3.eta_min == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(n3.residual < kAnalyticTol);  // left equals bound exactly at threshold

    // The r = 1 threshold approaches 1/2 as N grows.
    CHECK(cv_steering_threshold(40, 1).eta_min == doctest::Approx(0.5).epsilon(0.05));
    CHECK(cv_steering_threshold(3, 1).eta_min > cv_steering_threshold(9, 1).eta_min);
}

TEST_CASE("CV steering threshold for r = 2 solves the displayed inequality") {
    const ThresholdResult result = cv_steering_threshold(4, 2);
    REQUIRE(result.kind == ThresholdResult::Kind::Value);
    const double eta = result.eta_min;
    CHECK(std::abs(std::pow(eta, 3) - 0.5 * (eta + 0.5)) < 1e-9);
    CHECK(result.residual < kAnalyticTol);
}

TEST_CASE("CV steering threshold reports no solution when violation is impossible") {
    // N = 4, r = 3: 2^(N-2) = 4 < 3^(r-1) = 9, no lossless violation.
    const ThresholdResult result = cv_steering_threshold(4, 3);
    CHECK(result.kind == ThresholdResult::Kind::NoneInBracket);
}

TEST_CASE("CV steering threshold rejects bad inputs") {
    CHECK_THROWS_AS(cv_steering_threshold(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(cv_steering_threshold(4, 4), std::invalid_argument);
}

TEST_CASE("T >= 2 CV scenarios violate at any positive efficiency") {
    for (auto [n, t, r] : {std::array{4, 2, 2}, std::array{5, 3, 2}}) {
        const ThresholdResult result = cv_t2_threshold(n, t, r);
        CHECK(result.kind == ThresholdResult::Kind::AnyPositive);
        CHECK(result.eta_min == 0.0);
        CHECK(result.residual > 0.0);
    }
    CHECK_THROWS_AS(cv_t2_threshold(4, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(cv_t2_threshold(4, 1, 2), std::invalid_argument);
}

TEST_CASE("the r = 1 T = 2 case falls back to bisection and violates at the bracket floor") {
    const auto family = cv_family(4, straddling_trusted(4, 2, 1), 1, 1.0);
    const ThresholdResult result = bisection_threshold(family);
    CHECK(result.kind == ThresholdResult::Kind::Value);
    CHECK(result.eta_min == doctest::Approx(1e-4));
    CHECK(result.note.find("lower bracket") != std::string::npos);
}

TEST_CASE("qubit threshold closed form") {
    for (int n : {3, 5, 9}) {
        CHECK(qubit_threshold(n, 1).eta_min == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    CHECK(qubit_threshold(2, 0).eta_min == doctest::Approx(1.0));
    CHECK(qubit_threshold(3, 0).eta_min == doctest::Approx(std::exp2(-1.0 / 6.0)));
    CHECK_THROWS_WITH_AS(qubit_threshold(3, 3), doctest::Contains("no untrusted site"),
                         std::invalid_argument);
}

TEST_CASE("qubit thresholds are monotone where the closed form says so") {
    // More trust always helps: non-increasing in T at fixed N.
    for (int n = 3; n <= 10; ++n) {
        for (int t = 0; t < n - 1; ++t) {
            CHECK(qubit_threshold(n, t + 1).eta_min <= qubit_threshold(n, t).eta_min + kNormTol);
        }
    }
    // In N the closed form 2^((2-N-T)/(2(N-T))) is non-increasing only for
    // T <= 1; for T >= 2 it climbs back towards 1/sqrt(2) from below.
    for (int t = 0; t <= 1; ++t) {
        for (int n = t + 2; n < 10; ++n) {
            CHECK(qubit_threshold(n + 1, t).eta_min <= qubit_threshold(n, t).eta_min + kNormTol);
        }
    }
    CHECK(qubit_threshold(5, 2).eta_min > qubit_threshold(4, 2).eta_min);
}

TEST_CASE("Cabello reference efficiencies") {
    CHECK(cabello_reference(2) == doctest::Approx(1.0));
    CHECK(cabello_reference(3) == doctest::Approx(0.75));
    CHECK(cabello_reference(4000) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("bisection matches the CV closed form") {
    const ThresholdResult closed = cv_steering_threshold(3, 1);
    const ThresholdResult bisected = bisection_threshold(cv_family(3, {0}, 1, 1.0));
    REQUIRE(bisected.kind == ThresholdResult::Kind::Value);
    CHECK(std::abs(bisected.eta_min - closed.eta_min) < kOracleTol);
}

TEST_CASE("bisection matches the dual-rail closed form, Mermin and Ardehali routes") {
    const ThresholdResult closed = qubit_threshold(3, 1);
    const ThresholdResult mermin =
        bisection_threshold(qubit_family(3, 1, Selector::Modulus, 1.0));
    REQUIRE(mermin.kind == ThresholdResult::Kind::Value);
    CHECK(std::abs(mermin.eta_min - closed.eta_min) < kOracleTol);

    const ThresholdResult ardehali =
        bisection_threshold(qubit_family_ardehali(3, 1, Selector::RePlusIm, 1.0));
    REQUIRE(ardehali.kind == ThresholdResult::Kind::Value);
    CHECK(std::abs(ardehali.eta_min - closed.eta_min) < kOracleTol);
}

TEST_CASE("CV steering threshold ignores trusted-site loss") {
    const double reference = bisection_threshold(cv_family(4, {0}, 1, 1.0)).eta_min;
    for (double eta_t : {0.2, 0.6}) {
        const double shifted = bisection_threshold(cv_family(4, {0}, 1, eta_t)).eta_min;
        CHECK(std::abs(shifted - reference) < kAnalyticTol);
    }
}

TEST_CASE("qubit thresholds ignore trusted-site loss") {
    const double reference =
        bisection_threshold(qubit_family(4, 2, Selector::Modulus, 1.0)).eta_min;
    for (double eta_t : {0.3, 0.7}) {
        const double shifted =
            bisection_threshold(qubit_family(4, 2, Selector::Modulus, eta_t)).eta_min;
        CHECK(std::abs(shifted - reference) < kAnalyticTol);
    }
}

TEST_CASE("bisection refuses non-monotone families") {
    Scenario dummy;
    dummy.sites = 2;
    const auto family = [&dummy](double eta) {
        // Violated only in the middle of the bracket.
        const bool violated = eta > 0.4 && eta < 0.6;
        return make_report("synthetic", violated ? 2.0 : 0.0, 1.0, dummy);
    };
    CHECK_THROWS_WITH_AS(bisection_threshold(family), doctest::Contains("monotone"),
                         std::logic_error);
}

TEST_CASE("bisection reports when nothing in the bracket violates") {
    // CV Bell case at N = 3 never violates: left stays at eta^(3/2)/2 while
    // the bound never drops below it.
    const ThresholdResult result = bisection_threshold(cv_family(3, {}, 1, 1.0));
    CHECK(result.kind == ThresholdResult::Kind::NoneInBracket);
}

TEST_CASE("the N=2 T=0 threshold sits exactly at eta = 1") {
    // The closed form is 2^0 = 1: the flip point is the top of the bracket,
    // so bisection either lands within rounding of 1 or reports no
    // violation with a vanishing residual there.
    const ThresholdResult result = bisection_threshold(qubit_family(2, 0, Selector::Modulus, 1.0));
    if (result.kind == ThresholdResult::Kind::Value) {
        CHECK(result.eta_min == doctest::Approx(1.0).epsilon(1e-6));
    } else {
        CHECK(result.kind == ThresholdResult::Kind::NoneInBracket);
        CHECK(result.residual < kAnalyticTol);
    }
}
