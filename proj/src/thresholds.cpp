#include "ghznl/thresholds.hpp"

#include <cmath>
#include <stdexcept>

#include "ghznl/ghz.hpp"
#include "ghznl/observables.hpp"

namespace ghznl {

namespace {

constexpr int kMonotonicitySamples = 16;

ThresholdInputs cv_inputs(int sites, int trusted_count, int r) {
    return ThresholdInputs{sites, trusted_count, r, Encoding::CvFock, Selector::Modulus};
}

double report_residual(const CriterionReport& report) {
    return std::abs(report.left - report.bound);
}

}  // namespace

std::set<int> straddling_trusted(int sites, int trusted_count, int r) {
    if (trusted_count < 1 || trusted_count > sites) {
        throw std::invalid_argument("straddling_trusted: trusted count out of range");
    }
    std::set<int> trusted{0};  // inside the r-block
    if (trusted_count >= 2 && r < sites) trusted.insert(r);  // outside it
    for (int j = 1; static_cast<int>(trusted.size()) < trusted_count; ++j) trusted.insert(j);
    return trusted;
}

CriterionFamily cv_family(int sites, std::set<int> trusted, int r, double eta_t) {
    GhzSpec spec;
    spec.sites = sites;
    spec.r = r;
    spec.encoding = Encoding::CvFock;
    const RankTwoState state = build_ghz(spec);
    const std::vector<int> signs = default_cv_signs(spec);
    return [sites, trusted = std::move(trusted), state, signs, eta_t](double eta_u) {
        Scenario scenario;
        scenario.sites = sites;
        scenario.trusted = trusted;
        scenario.encoding = Encoding::CvFock;
        scenario.loss = LossModel{eta_t, eta_u, {}};
        return cv_criterion(state, scenario, signs);
    };
}

namespace {

CriterionFamily qubit_family_impl(int sites, int trusted_count, Selector selector, double eta_t,
                                  bool ardehali) {
    GhzSpec spec;
    spec.sites = sites;
    spec.r = sites;
    spec.encoding = Encoding::DualRail;
    const RankTwoState state = build_ghz(spec);
    const SettingBundle bundle = ardehali ? ardehali_settings(sites, Encoding::DualRail)
                                          : mermin_settings(sites, Encoding::DualRail);
    std::set<int> trusted;
    for (int j = 0; j < trusted_count; ++j) trusted.insert(j);
    return [sites, trusted = std::move(trusted), state, bundle, selector, eta_t](double eta_u) {
        Scenario scenario;
        scenario.sites = sites;
        scenario.trusted = trusted;
        scenario.encoding = Encoding::DualRail;
        scenario.loss = LossModel{eta_t, eta_u, {}};
        return qubit_criterion(state, scenario, bundle, selector);
    };
}

}  // namespace

CriterionFamily qubit_family(int sites, int trusted_count, Selector selector, double eta_t) {
    return qubit_family_impl(sites, trusted_count, selector, eta_t, false);
}

CriterionFamily qubit_family_ardehali(int sites, int trusted_count, Selector selector,
                                      double eta_t) {
    return qubit_family_impl(sites, trusted_count, selector, eta_t, true);
}

ThresholdResult cv_steering_threshold(int sites, int r) {
    if (sites < 3) {
        throw std::invalid_argument("cv_steering_threshold: needs N >= 3");
    }
    if (r < 1 || r > sites - 1) {
        throw std::invalid_argument("cv_steering_threshold: r must lie in 1..N-1");
    }

    ThresholdResult result;
    result.method = "closed-form";
    result.inputs = cv_inputs(sites, 1, r);

    double eta = 0.0;
    if (r == 1) {
        eta = 0.5 * std::exp2(1.0 / (sites - 1));
    } else {
        // f(eta) = (N-1) ln eta + (N-1-r) ln 2 - (r-1) ln(eta + 1/2) is
        // strictly increasing on (0, 1].
        const auto f = [sites, r](double x) {
            return (sites - 1) * std::log(x) + (sites - 1 - r) * std::log(2.0) -
                   (r - 1) * std::log(x + 0.5);
        };
        if (f(1.0) <= 0.0) {
            result.kind = ThresholdResult::Kind::NoneInBracket;
            result.note = "inequality has no solution in (0,1]";
            result.eta_min = 1.0;
            result.residual = report_residual(cv_family(sites, {0}, r, 1.0)(1.0));
            return result;
        }
        double lo = 1e-12, hi = 1.0;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) > 0.0 ? hi : lo) = mid;
        }
        eta = 0.5 * (lo + hi);
    }
    result.kind = ThresholdResult::Kind::Value;
    result.eta_min = eta;
    result.residual = report_residual(cv_family(sites, {0}, r, 1.0)(eta));
    return result;
}

ThresholdResult cv_t2_threshold(int sites, int trusted_count, int r) {
    if (trusted_count < 2) {
        throw std::invalid_argument("cv_t2_threshold: needs T >= 2");
    }
    if (trusted_count > sites) {
        throw std::invalid_argument("cv_t2_threshold: T exceeds the site count");
    }
    if (r < 2 || r > sites - 1) {
        throw std::invalid_argument(
            "cv_t2_threshold: needs 2 <= r <= N-1 (other cases require bisection)");
    }

    const auto family = cv_family(sites, straddling_trusted(sites, trusted_count, r), r, 0.01);
    const CriterionReport probe = family(0.01);
    if (!probe.violated || probe.bound > kAnalyticTol) {
        throw std::logic_error("cv_t2_threshold: expected a zero bound and a violation at "
                               "eta = 0.01; check the trusted-site placement");
    }
    ThresholdResult result;
    result.kind = ThresholdResult::Kind::AnyPositive;
    result.method = "closed-form";
    result.eta_min = 0.0;
    result.residual = report_residual(probe);
    result.inputs = cv_inputs(sites, trusted_count, r);
    result.note = "violated for any eta > 0; verified at eta = 0.01";
    return result;
}

ThresholdResult qubit_threshold(int sites, int trusted_count) {
    if (sites < 2) throw std::invalid_argument("qubit_threshold: needs N >= 2");
    if (trusted_count < 0 || trusted_count >= sites) {
        throw std::invalid_argument(trusted_count == sites
                                        ? "qubit_threshold: no untrusted site when T = N"
                                        : "qubit_threshold: trusted count out of range");
    }
    const double eta =
        std::exp2(static_cast<double>(2 - sites - trusted_count) / (2.0 * (sites - trusted_count)));

    ThresholdResult result;
    result.kind = ThresholdResult::Kind::Value;
    result.method = "closed-form";
    result.eta_min = eta;
    result.inputs = ThresholdInputs{sites, trusted_count, sites, Encoding::DualRail,
                                    Selector::Modulus};
    result.residual =
        report_residual(qubit_family(sites, trusted_count, Selector::Modulus, 1.0)(eta));
    return result;
}

double cabello_reference(int sites) {
    if (sites < 2) throw std::invalid_argument("cabello_reference: needs N >= 2");
    return static_cast<double>(sites) / (2.0 * sites - 2.0);
}

ThresholdResult bisection_threshold(const CriterionFamily& family, double tol, double lo,
                                    double hi) {
    if (!(lo > 0.0 && lo < hi && hi <= 1.0)) {
        throw std::invalid_argument("bisection_threshold: bracket must satisfy 0 < lo < hi <= 1");
    }

    // The root-find flips on the exact left/bound crossing rather than the
    // report's margined flag: trusted-site efficiency scales both sides by
    // the same factor, so the sign of left - bound is eta_t-independent.
    const auto crossed = [&family](double eta) {
        const CriterionReport report = family(eta);
        return report.left > report.bound;
    };

    // Monotonicity pre-check: once violated, must stay violated.
    bool flags[kMonotonicitySamples];
    double etas[kMonotonicitySamples];
    for (int i = 0; i < kMonotonicitySamples; ++i) {
        etas[i] = lo + (hi - lo) * i / (kMonotonicitySamples - 1);
        flags[i] = crossed(etas[i]);
    }
    for (int i = 1; i < kMonotonicitySamples; ++i) {
        if (flags[i - 1] && !flags[i]) {
            throw std::logic_error(
                "bisection_threshold: violation is not monotone in eta; manual analysis required");
        }
    }

    ThresholdResult result;
    result.method = "bisection";
    if (flags[0]) {
        result.kind = ThresholdResult::Kind::Value;
        result.eta_min = lo;
        result.residual = report_residual(family(lo));
        result.note = "violated at the lower bracket; threshold at or below eta = " +
                      std::to_string(lo);
        return result;
    }
    if (!flags[kMonotonicitySamples - 1]) {
        result.kind = ThresholdResult::Kind::NoneInBracket;
        result.eta_min = hi;
        result.residual = report_residual(family(hi));
        result.note = "not violated anywhere in the bracket";
        return result;
    }

    int first_true = 1;
    while (!flags[first_true]) ++first_true;
    double a = etas[first_true - 1], b = etas[first_true];
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        (crossed(mid) ? b : a) = mid;
    }
    result.kind = ThresholdResult::Kind::Value;
    result.eta_min = 0.5 * (a + b);
    result.residual = report_residual(family(result.eta_min));
    return result;
}

}  // namespace ghznl
