#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>

#include "ghznl/criteria.hpp"
#include "ghznl/types.hpp"

namespace ghznl {

struct ThresholdInputs {
    int sites = 0;
    int trusted_count = 0;
    int r = 0;
    Encoding encoding = Encoding::CvFock;
    Selector selector = Selector::Modulus;
};

/// Minimal detection efficiency for which the criterion flips to violated.
struct ThresholdResult {
    enum class Kind {
        Value,        // eta_min holds the threshold
        AnyPositive,  // violated for every eta > 0
        NoneInBracket // no violation anywhere in the search bracket
    };
    Kind kind = Kind::Value;
    double eta_min = 0.0;
    std::string method;   // "closed-form" or "bisection"
    double residual = 0.0; // |left - bound| at eta_min (or at the probe point)
    ThresholdInputs inputs;
    std::string note;
};

/// Evaluates one member of a scenario family at untrusted efficiency eta_u.
using CriterionFamily = std::function<CriterionReport(double eta_u)>;

/// CV steering (T = 1, trusted site inside the r-block): solves
/// eta^(N-1) = 2^(r-N+1) (eta + 1/2)^(r-1). The difference is monotone, so
/// the root is unique; r = 1 reduces to eta = 2^(1/(N-1)) / 2 exactly.
ThresholdResult cv_steering_threshold(int sites, int r);

/// CV with T >= 2 trusted sites and 2 <= r <= N-1: a site ordering with one
/// trusted site in each block annihilates both state terms, so the bound is
/// zero and any eta > 0 violates. Verified by evaluating at eta = 0.01.
ThresholdResult cv_t2_threshold(int sites, int trusted_count, int r);

/// Dichotomic (dual-rail, r = N) closed form 2^((2-N-T)/(2(N-T))) for
/// 0 <= T < N. Independent of the trusted-site efficiency, which appears on
/// both sides and cancels.
ThresholdResult qubit_threshold(int sites, int trusted_count);

/// N/(2N-2): the critical efficiency quoted for Mermin-inequality LHV
/// failure, used as a comparison reference only.
double cabello_reference(int sites);

/// Generic bisection on a simulated criterion family. Samples 16 points on
/// [lo, hi] first and refuses non-monotone families; refuses to extrapolate
/// below the bracket (eta = 0 is degenerate).
ThresholdResult bisection_threshold(const CriterionFamily& family, double tol = 1e-7,
                                    double lo = 1e-4, double hi = 1.0);

/// Trusted-site placement with one site in the r-block and, for T >= 2 and
/// r < N, one site outside it.
std::set<int> straddling_trusted(int sites, int trusted_count, int r);

/// CV GHZ family at fixed (N, trusted set, r, phi = 0, eta_t); the returned
/// callable evaluates cv_criterion at a given eta_u.
CriterionFamily cv_family(int sites, std::set<int> trusted, int r, double eta_t);

/// Dual-rail GHZ(r = N) family with Mermin settings and the given selector.
CriterionFamily qubit_family(int sites, int trusted_count, Selector selector, double eta_t);

/// Same family but with Ardehali settings (used with Selector::RePlusIm).
CriterionFamily qubit_family_ardehali(int sites, int trusted_count, Selector selector,
                                      double eta_t);

}  // namespace ghznl
