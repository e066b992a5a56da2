#pragma once

#include <vector>

#include "ghznl/tensor.hpp"
#include "ghznl/types.hpp"

namespace ghznl {

/// Parameters of the GHZ-type family
///   (|0>^r |1>^(N-r) + e^{i phi} |1>^r |0>^(N-r)) / sqrt(2),
/// with r in 1..N and an optional site permutation. The permutation is the
/// ordering freedom exploited by criteria with two or more trusted sites:
/// the block structure of the state does not have to coincide with the
/// site labels.
struct GhzSpec {
    int sites = 0;                 // N >= 2
    int r = 0;                     // 1..N
    double phi = 0.0;              // relative phase, radians
    Encoding encoding = Encoding::CvFock;
    std::vector<int> site_order;   // 0-based permutation; empty = identity

    /// site_order[j] is the position the j-th factor of the canonical
    /// ordering ends up at.
    std::vector<int> effective_order() const;
};

/// Builds the factorized GHZ state. Encoding fixes the local basis:
/// cv-fock uses photon-number kets, ideal-qubit uses sigma^z eigenkets
/// (|0> the +1 eigenstate), dual-rail maps |0> -> |down>, |1> -> |up>
/// so the logical values sit in the +-1 eigenstates of s^z.
RankTwoState build_ghz(const GhzSpec& spec);

/// Sign pattern (+1/-1 per site) that makes the CV moment <prod a^{s_j}>
/// nonzero: + on the r-block, - elsewhere, following the permutation.
std::vector<int> default_cv_signs(const GhzSpec& spec);

}  // namespace ghznl
