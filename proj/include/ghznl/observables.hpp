#pragma once

#include <string>
#include <vector>

#include "ghznl/tensor.hpp"
#include "ghznl/types.hpp"

namespace ghznl {

// --- per-site operator constructors -----------------------------------------

/// Truncated bosonic ladder operators on {|0>,|1>}; a^dag|1> is cut to 0,
/// exact for every moment taken on states with at most one photon per mode
/// (loss channels never add photons).
LocalOperator annihilator();
LocalOperator creator();
LocalOperator number_op();

LocalOperator pauli_x();
LocalOperator pauli_y();
LocalOperator pauli_z();
/// sigma^theta = sigma^x cos(theta) + sigma^y sin(theta)
LocalOperator pauli_theta(double theta);

/// Schwinger spin components on {|vac>,|up>,|down>}. They act as Pauli
/// matrices on the photon-present subspace and annihilate the vacuum,
/// which realises the extra 0 outcome of a lost photon.
LocalOperator schwinger_x();
LocalOperator schwinger_y();
LocalOperator schwinger_z();
LocalOperator schwinger_theta(double theta);

// --- measurement-setting bundles ---------------------------------------------

/// One site's F-operator spec: F = X + sign * i Y with X the theta-rotated
/// observable and Y its conjugate at theta + pi/2. The CV encoding uses
/// F^+ = sqrt(2) a^dag, F^- = sqrt(2) a instead (theta is ignored).
struct FSpec {
    double theta = 0.0;
    int sign = +1;  // +1 or -1
};

struct SettingBundle {
    Encoding encoding = Encoding::IdealQubit;
    std::vector<FSpec> sites;

    int site_count() const { return static_cast<int>(sites.size()); }
};

LocalOperator f_operator(Encoding encoding, const FSpec& spec);

/// All sites theta = 0, sign +. On the GHZ state with r = N this attains
/// the perfect-correlation maximum 2^(N-1) of Re(Pi_N).
SettingBundle mermin_settings(int sites, Encoding encoding = Encoding::IdealQubit);

/// Sites 1..N-1 at theta = 0, site N at theta = -pi/4 (so Y sits at +pi/4).
/// All signs +, which attains the statistical-correlation maximum 2^(N-1/2)
/// of Re(Pi_N) + Im(Pi_N) on the GHZ state with r = N.
SettingBundle ardehali_settings(int sites, Encoding encoding = Encoding::IdealQubit);

/// The product observable prod_j F_j for a bundle.
ProductObservable bundle_observable(const SettingBundle& bundle);

/// z = <prod_j F_j^{s_j}> via the factorized path (with optional loss).
Complex pi_moment_complex(const RankTwoState& state, const SettingBundle& bundle,
                          const ProductChannel* channel = nullptr);

/// Selected part of the moment: Re z, Im z, Re z + Im z, or |z|.
double pi_moment(const RankTwoState& state, const SettingBundle& bundle, Selector selector,
                 const ProductChannel* channel = nullptr);

// --- Pauli-string expansion (cross-check) ------------------------------------

/// One Hermitian correlator term of the expansion of prod_j (X_j + s_j i Y_j):
/// axes[j] == 'X' selects sigma^{theta_j}, 'Y' selects sigma^{theta_j+pi/2}.
struct PauliTerm {
    double coeff = 0.0;
    std::vector<char> axes;
};

/// Expands the selected Hermitian part into 2^N measurable correlators.
/// Summing coeff * <correlator> over the terms reproduces pi_moment.
/// Ideal-qubit bundles only; Selector::Modulus is not expandable.
std::vector<PauliTerm> pauli_expansion(const SettingBundle& bundle, Selector selector);

/// Materialises one expansion term as a product observable.
ProductObservable term_observable(const SettingBundle& bundle, const PauliTerm& term);

}  // namespace ghznl
