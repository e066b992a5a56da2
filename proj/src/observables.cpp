#include "ghznl/observables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ghznl {

namespace {

constexpr Complex kI(0.0, 1.0);

void check_bundle(const SettingBundle& bundle) {
    if (bundle.site_count() < 2) {
        throw std::invalid_argument("setting bundle needs at least 2 sites, got " +
                                    std::to_string(bundle.site_count()));
    }
    for (const auto& spec : bundle.sites) {
        if (spec.sign != 1 && spec.sign != -1) {
            throw std::invalid_argument("setting bundle: sign must be +1 or -1");
        }
    }
}

}  // namespace

LocalOperator annihilator() {
    LocalOperator a = LocalOperator::Zero(2, 2);
    a(0, 1) = 1.0;  // a|1> = |0>
    return a;
}

LocalOperator creator() {
    LocalOperator ad = LocalOperator::Zero(2, 2);
    ad(1, 0) = 1.0;
    return ad;
}

LocalOperator number_op() {
    LocalOperator n = LocalOperator::Zero(2, 2);
    n(1, 1) = 1.0;
    return n;
}

LocalOperator pauli_x() {
    LocalOperator m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

LocalOperator pauli_y() {
    LocalOperator m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

LocalOperator pauli_z() {
    LocalOperator m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

LocalOperator pauli_theta(double theta) {
    return std::cos(theta) * pauli_x() + std::sin(theta) * pauli_y();
}

LocalOperator schwinger_x() {
    LocalOperator m = LocalOperator::Zero(3, 3);
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    return m;
}

LocalOperator schwinger_y() {
    LocalOperator m = LocalOperator::Zero(3, 3);
    m(1, 2) = -kI;
    m(2, 1) = kI;
    return m;
}

LocalOperator schwinger_z() {
    LocalOperator m = LocalOperator::Zero(3, 3);
    m(1, 1) = 1.0;
    m(2, 2) = -1.0;
    return m;
}

LocalOperator schwinger_theta(double theta) {
    return std::cos(theta) * schwinger_x() + std::sin(theta) * schwinger_y();
}

LocalOperator f_operator(Encoding encoding, const FSpec& spec) {
    if (spec.sign != 1 && spec.sign != -1) {
        throw std::invalid_argument("f_operator: sign must be +1 or -1");
    }
    const Complex s = static_cast<double>(spec.sign) * kI;
    switch (encoding) {
        case Encoding::CvFock:
            return std::sqrt(2.0) * (spec.sign > 0 ? creator() : annihilator());
        case Encoding::IdealQubit:
            return pauli_theta(spec.theta) + s * pauli_theta(spec.theta + M_PI / 2.0);
        case Encoding::DualRail:
            return schwinger_theta(spec.theta) + s * schwinger_theta(spec.theta + M_PI / 2.0);
    }
    throw std::logic_error("f_operator: unknown encoding");
}

SettingBundle mermin_settings(int sites, Encoding encoding) {
    SettingBundle bundle;
    bundle.encoding = encoding;
    bundle.sites.assign(sites, FSpec{0.0, +1});
    check_bundle(bundle);
    return bundle;
}

SettingBundle ardehali_settings(int sites, Encoding encoding) {
    SettingBundle bundle;
    bundle.encoding = encoding;
    bundle.sites.assign(sites, FSpec{0.0, +1});
    bundle.sites.back() = FSpec{-M_PI / 4.0, +1};
    check_bundle(bundle);
    return bundle;
}

ProductObservable bundle_observable(const SettingBundle& bundle) {
    check_bundle(bundle);
    ProductObservable obs;
    obs.site_ops.reserve(bundle.sites.size());
    for (const auto& spec : bundle.sites) {
        obs.site_ops.push_back(f_operator(bundle.encoding, spec));
    }
    return obs;
}

Complex pi_moment_complex(const RankTwoState& state, const SettingBundle& bundle,
                          const ProductChannel* channel) {
    return factorized_moment(state, bundle_observable(bundle), channel);
}

double pi_moment(const RankTwoState& state, const SettingBundle& bundle, Selector selector,
                 const ProductChannel* channel) {
    return apply_selector(selector, pi_moment_complex(state, bundle, channel));
}

std::vector<PauliTerm> pauli_expansion(const SettingBundle& bundle, Selector selector) {
    if (bundle.encoding != Encoding::IdealQubit) {
        throw std::invalid_argument("pauli_expansion: ideal-qubit bundles only");
    }
    if (selector == Selector::Modulus) {
        throw std::invalid_argument("pauli_expansion: modulus has no correlator expansion");
    }
    if (bundle.site_count() < 1) {
        throw std::invalid_argument("pauli_expansion: empty bundle");
    }
    const int n = bundle.site_count();

    std::vector<PauliTerm> terms;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        // Choosing Y at site j contributes a factor (sign_j * i).
        Complex phase(1.0, 0.0);
        std::vector<char> axes(n, 'X');
        for (int j = 0; j < n; ++j) {
            if (mask & (1ul << j)) {
                axes[j] = 'Y';
                phase *= static_cast<double>(bundle.sites[j].sign) * kI;
            }
        }
        double coeff = 0.0;
        const int y_count = std::popcount(mask);
        const bool want_real = (y_count % 2 == 0);
        if (selector == Selector::Re && want_real) coeff = phase.real();
        if (selector == Selector::Im && !want_real) coeff = phase.imag();
        if (selector == Selector::RePlusIm) coeff = want_real ? phase.real() : phase.imag();
        if (coeff != 0.0) terms.push_back(PauliTerm{coeff, std::move(axes)});
    }
    return terms;
}

ProductObservable term_observable(const SettingBundle& bundle, const PauliTerm& term) {
    if (static_cast<int>(term.axes.size()) != bundle.site_count()) {
        throw std::invalid_argument("term_observable: axis count does not match bundle");
    }
    ProductObservable obs;
    obs.site_ops.reserve(term.axes.size());
    for (int j = 0; j < bundle.site_count(); ++j) {
        const double theta =
            bundle.sites[j].theta + (term.axes[j] == 'Y' ? M_PI / 2.0 : 0.0);
        obs.site_ops.push_back(bundle.encoding == Encoding::DualRail ? schwinger_theta(theta)
                                                                     : pauli_theta(theta));
    }
    return obs;
}

}  // namespace ghznl
