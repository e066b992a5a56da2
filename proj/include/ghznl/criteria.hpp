#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ghznl/loss.hpp"
#include "ghznl/observables.hpp"
#include "ghznl/tensor.hpp"
#include "ghznl/types.hpp"

namespace ghznl {

/// Measurement scenario: N sites, the subset whose devices are trusted to
/// implement the declared quantum observables, the encoding, and optional
/// detection loss. T = |trusted| selects the member of the family of
/// locally causal models being tested.
struct Scenario {
    int sites = 0;
    std::set<int> trusted;  // 0-based
    Encoding encoding = Encoding::CvFock;
    std::optional<LossModel> loss;

    int T() const { return static_cast<int>(trusted.size()); }
    bool is_trusted(int site) const { return trusted.count(site) > 0; }
    void validate() const;
};

/// Strength of the nonlocality claim a violation supports, by trust level.
enum class NonlocalityClass {
    Entanglement,              // T = N
    EntanglementWithUntrusted, // 1 < T < N
    MultipartiteEprSteering,   // T = 1
    BellNonlocality,           // T = 0
};

NonlocalityClass class_for_trust(int trusted_count, int sites);
std::string to_string(NonlocalityClass c);

struct CriterionReport {
    std::string criterion;
    double left = 0.0;
    double bound = 0.0;
    double ratio = 0.0;  // +inf when bound == 0 and left > 0
    bool violated = false;
    NonlocalityClass cls = NonlocalityClass::Entanglement;
    // True when the bound is one of the square-geometry values confirmed
    // against the brute-force LHV enumeration rather than a printed
    // closed form.
    bool bound_oracle_verified = false;
};

/// |< a_1^{s_1} ... a_N^{s_N} >| with a^+ the creator, a^- the annihilator,
/// evaluated after the scenario's loss channel. signs[j] in {+1,-1}.
double cv_left(const RankTwoState& state, const Scenario& scenario,
               const std::vector<int>& signs);

/// sqrt(< prod_trusted n_j prod_untrusted (n_j + 1/2) >) after loss.
double cv_right(const RankTwoState& state, const Scenario& scenario);

/// Moment-vs-bound report for the CV criterion, classified by trust level.
CriterionReport cv_criterion(const RankTwoState& state, const Scenario& scenario,
                             const std::vector<int>& signs);

/// Classical bound on the selected part of <prod F_j> for the model with T
/// trusted sites out of N, scaled by eta_t^T under detection loss.
///
/// T >= 1 bounds are circle-geometry values (a trusted site contributes a
/// free phase). T = 0 bounds come from the square of LHV extreme points:
/// tight edge values for the matched parity, corner values otherwise. The
/// corner values (even-N re/im, odd-N re+im) are not printed anywhere as
/// closed forms; qubit_criterion confirms them against the LHV enumeration
/// before reporting.
double qubit_bound(int sites, int trusted_count, Selector selector, double eta_t = 1.0);

/// True when qubit_bound(sites, trusted_count, selector) is one of the
/// square-corner values that requires oracle confirmation.
bool qubit_bound_needs_oracle(int sites, int trusted_count, Selector selector);

/// Dichotomic-criterion report: left is the selected part of the moment of
/// the bundle's F-operator product (in absolute value), the bound comes
/// from qubit_bound with the product of trusted-site efficiencies.
CriterionReport qubit_criterion(const RankTwoState& state, const Scenario& scenario,
                                const SettingBundle& bundle, Selector selector);

/// Assembles ratio / violated / class from raw left and bound values.
CriterionReport make_report(std::string criterion, double left, double bound,
                            const Scenario& scenario);

/// Per-site observables for the general moment criterion: X_j, Y_j, the
/// trusted-site uncertainty constants C_j, and optionally the exact
/// X_j^2 + Y_j^2 operator. When squared_sum_ops is empty the squares are
/// formed by matrix multiplication, which is exact whenever X and Y close
/// on the local space (qubit and dual-rail operators do). Truncated CV
/// quadratures do not close, so CV callers must pass 2n + 1 explicitly.
struct GeneralObservables {
    std::vector<LocalOperator> x_ops;
    std::vector<LocalOperator> y_ops;
    std::vector<double> c;
    std::vector<LocalOperator> squared_sum_ops;
};

/// General form of the family:
///   left  = |< prod_j (X_j + s_j i Y_j) >|,
///   bound = sqrt(< prod_trusted (X_j^2+Y_j^2-C_j) prod_untrusted (X_j^2+Y_j^2) >),
/// both after the scenario's loss channel. Only the C_j = 1 CV and qubit
/// instantiations carry paper-backed bounds; anything else is exposed for
/// exploration.
CriterionReport general_criterion(const RankTwoState& state, const Scenario& scenario,
                                  const GeneralObservables& obs, const std::vector<int>& signs);

}  // namespace ghznl
