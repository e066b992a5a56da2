#pragma once

#include <cstdint>
#include <vector>

#include "ghznl/types.hpp"

namespace ghznl {

// Deterministic strategies assign (X_j, Y_j) in {-1,+1}^2 per untrusted
// site, encoded as two bits per site in a strategy index: bit0 -> X sign,
// bit1 -> Y sign. Trusted sites contribute a point of the unit circle,
// which reduces analytically to a single aggregate phase.

inline constexpr int kLhvSiteCap = 12;  // 4^N enumeration cap

/// (X, Y) assignment of `site` under strategy `index`.
std::pair<int, int> strategy_xy(std::uint64_t index, int site);

/// Value of prod_j (X_j + i Y_j) for one strategy over `sites` sites.
Complex strategy_product(std::uint64_t index, int sites);

/// Maximum of the selected part of prod_j (X_j + i Y_j) over all 4^N
/// deterministic strategies. OpenMP max-reduction over index ranges.
double lhv_max(int sites, Selector selector);

/// Serial reference for lhv_max; identical result, kept for testing and
/// benchmarking.
double lhv_max_serial(int sites, Selector selector);

struct LhvMaximizers {
    double value = 0.0;
    std::vector<std::uint64_t> strategies;  // every index attaining value
};

/// All maximizing strategies (ties recorded, not broken).
LhvMaximizers lhv_maximizers(int sites, Selector selector);

/// Maximum of the selected part over LHS(T,N) extreme points: untrusted
/// sites run over the +-1 assignments, trusted sites contribute modulus <= 1
/// and one free aggregate phase that is optimised analytically. A phase
/// grid (phase_resolution >= 256 points) re-checks the analytic optimum.
double lhs_max(int sites, int trusted_count, Selector selector, int phase_resolution = 512);

// --- independent dense evaluator ---------------------------------------------
//
// A from-scratch expectation-value path sharing no code with the tensor
// module: raw index arithmetic, explicit Kronecker products, and the
// Schroedinger picture for channels. Used to cross-check the other two
// evaluator paths.

using OracleVec = std::vector<Complex>;
using OracleMat = std::vector<std::vector<Complex>>;  // row-major

struct OracleTerm {
    Complex amp;
    std::vector<OracleVec> factors;  // one local vector per site
};

inline constexpr long kOracleDimCap = 59049;      // 3^10, vector path
inline constexpr long kOracleDensityCap = 2048;   // density-matrix path

/// <psi| (x)_j O_j |psi> by explicit basis-state summation, where
/// |psi> = sum_t amp_t (x)_j |factors_t_j>. If kraus_per_site is nonempty
/// the state is promoted to a density matrix and each site's channel is
/// applied before taking the trace.
Complex independent_moment(const std::vector<int>& dims, const std::vector<OracleTerm>& terms,
                           const std::vector<OracleMat>& site_ops,
                           const std::vector<std::vector<OracleMat>>& kraus_per_site = {});

}  // namespace ghznl
