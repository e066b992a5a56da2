#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ghznl/types.hpp"

namespace ghznl {

/// Per-site operator on the local Hilbert space (dim 2 or 3).
using LocalOperator = Eigen::MatrixXcd;
using LocalKet = Eigen::VectorXcd;

/// One Kraus set acting on a single site.
using KrausSet = std::vector<LocalOperator>;
/// Per-site Kraus sets for a product channel (one entry per site).
using ProductChannel = std::vector<KrausSet>;

/// N-site product observable, one local factor per site.
struct ProductObservable {
    std::vector<LocalOperator> site_ops;

    ProductObservable() = default;
    explicit ProductObservable(std::vector<LocalOperator> ops) : site_ops(std::move(ops)) {}

    int sites() const { return static_cast<int>(site_ops.size()); }
};

/// Two-term superposition of product states, stored factorised per site:
///   |psi> = amp1 * (x)_j |term1_j>  +  amp2 * (x)_j |term2_j>.
///
/// This is the production representation: all states handled here have
/// exactly two product terms and all observables/channels are site-local,
/// so global 2^N storage is never needed. Cross terms are kept fully
/// general even though the GHZ family always has orthogonal terms.
struct RankTwoState {
    Complex amp1;
    Complex amp2;
    std::vector<LocalKet> term1;
    std::vector<LocalKet> term2;

    int sites() const { return static_cast<int>(term1.size()); }
    int dim(int site) const { return static_cast<int>(term1[site].size()); }

    /// prod_j <term1_j|term2_j>
    Complex overlap_product() const;
    /// <psi|psi>
    double squared_norm() const;

    /// Throws std::invalid_argument if vectors are not unit-norm per site,
    /// shapes are inconsistent, or squared_norm deviates from 1 beyond
    /// kNormTol.
    void validate() const;

    /// Rescales both amplitudes so squared_norm becomes exactly 1.
    static RankTwoState normalized(Complex amp1, Complex amp2,
                                   std::vector<LocalKet> term1,
                                   std::vector<LocalKet> term2);
};

inline constexpr long kDefaultDenseCap = 59049;  // 3^10

/// State over the full product space, pure vector or density matrix.
/// Oracle representation only; never used on production paths.
struct DenseState {
    std::vector<int> dims;
    Eigen::VectorXcd psi;   // valid iff pure
    Eigen::MatrixXcd rho;   // valid iff !pure
    bool pure = true;

    long total_dim() const;

    static DenseState from_vector(std::vector<int> dims, Eigen::VectorXcd psi,
                                  long cap = kDefaultDenseCap);
    static DenseState from_density(std::vector<int> dims, Eigen::MatrixXcd rho,
                                   long cap = kDefaultDenseCap);
    /// Pure -> |psi><psi| conversion (no-op for mixed states).
    DenseState to_density() const;
};

/// <psi| (x)_j O_j |psi> evaluated factor-by-factor. With a channel,
/// each site factor becomes sum_k <t_u|K_k^dag O_j K_k|t_v>. Cost is
/// linear in the number of sites.
Complex factorized_moment(const RankTwoState& state, const ProductObservable& obs,
                          const ProductChannel* channel = nullptr);

/// Expands a rank-two state into the full product space.
/// Throws when the total dimension exceeds `cap` (use the factorized path).
DenseState to_dense(const RankTwoState& state, long cap = kDefaultDenseCap);

/// Full-space expectation value of a product observable.
Complex dense_moment(const DenseState& state, const ProductObservable& obs);

/// Applies a single-site Kraus channel to a dense state; output is a
/// density matrix. The Kraus set must be complete to kChannelTol.
DenseState apply_channel_dense(const DenseState& state, int site, const KrausSet& kraus);
/// Serial reference for the channel kernel; identical output, no OpenMP.
DenseState apply_channel_dense_serial(const DenseState& state, int site, const KrausSet& kraus);

/// sum_k K_k^dag K_k == identity within kChannelTol?
bool kraus_complete(const KrausSet& kraus, double tol = kChannelTol);

}  // namespace ghznl
