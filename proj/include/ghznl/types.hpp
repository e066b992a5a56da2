#pragma once

#include <complex>
#include <string>

namespace ghznl {

using Complex = std::complex<double>;

/// Local-site encoding of the GHZ family and its observables.
///
/// CvFock     : truncated single-mode Fock space {|0>,|1>} (dim 2)
/// DualRail   : one photon across two modes plus the vacuum reached by loss,
///              basis {|vac>,|up>,|down>} (dim 3)
/// IdealQubit : sigma^z eigenbasis {|0>,|1>}, |0> the +1 eigenstate (dim 2)
enum class Encoding { CvFock, DualRail, IdealQubit };

int local_dim(Encoding enc);
std::string to_string(Encoding enc);
Encoding parse_encoding(const std::string& name);

/// Part of the complex moment <prod_j F_j> a criterion constrains.
/// Re/Im/RePlusIm are the Hermitian-part selectors; Modulus is |<prod F>|.
enum class Selector { Re, Im, RePlusIm, Modulus };

double apply_selector(Selector sel, Complex z);
std::string to_string(Selector sel);
Selector parse_selector(const std::string& name);

// Tolerances. All target quantities are exact dyadic/algebraic numbers, so
// double precision leaves orders of magnitude of headroom.
inline constexpr double kAnalyticTol = 1e-9;    // analytic expectation values
inline constexpr double kNormTol = 1e-12;       // state normalisation
inline constexpr double kChannelTol = 1e-10;    // Kraus completeness / trace preservation
inline constexpr double kOracleTol = 1e-6;      // brute-force vs closed-form bounds
inline constexpr double kViolationMargin = 1e-9; // violated <=> left > bound + margin

}  // namespace ghznl
