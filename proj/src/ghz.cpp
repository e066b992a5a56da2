#include "ghznl/ghz.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ghznl {

namespace {

void check_spec(const GhzSpec& spec) {
    if (spec.sites < 2) {
        throw std::invalid_argument("GhzSpec: need at least 2 sites, got " +
                                    std::to_string(spec.sites));
    }
    if (spec.r < 1 || spec.r > spec.sites) {
        throw std::invalid_argument("GhzSpec: r must lie in 1.." + std::to_string(spec.sites) +
                                    ", got " + std::to_string(spec.r));
    }
    if (!spec.site_order.empty()) {
        if (static_cast<int>(spec.site_order.size()) != spec.sites) {
            throw std::invalid_argument("GhzSpec: site_order length does not match site count");
        }
        std::vector<bool> seen(spec.sites, false);
        for (int p : spec.site_order) {
            if (p < 0 || p >= spec.sites || seen[p]) {
                throw std::invalid_argument("GhzSpec: site_order is not a permutation");
            }
            seen[p] = true;
        }
    }
}

LocalKet logical_ket(Encoding enc, int value) {
    LocalKet v = LocalKet::Zero(local_dim(enc));
    switch (enc) {
        case Encoding::CvFock:
        case Encoding::IdealQubit:
            v(value) = 1.0;  // basis order (|0>, |1>)
            break;
        case Encoding::DualRail:
            // basis order (|vac>, |up>, |down>); |0> -> |down>, |1> -> |up>
            v(value == 0 ? 2 : 1) = 1.0;
            break;
    }
    return v;
}

}  // namespace

std::vector<int> GhzSpec::effective_order() const {
    if (!site_order.empty()) return site_order;
    std::vector<int> identity(sites);
    std::iota(identity.begin(), identity.end(), 0);
    return identity;
}

RankTwoState build_ghz(const GhzSpec& spec) {
    check_spec(spec);
    const std::vector<int> order = spec.effective_order();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    RankTwoState state;
    state.amp1 = Complex(inv_sqrt2, 0.0);
    state.amp2 = std::polar(inv_sqrt2, spec.phi);
    state.term1.resize(spec.sites);
    state.term2.resize(spec.sites);
    for (int j = 0; j < spec.sites; ++j) {
        const int logical1 = (j < spec.r) ? 0 : 1;
        state.term1[order[j]] = logical_ket(spec.encoding, logical1);
        state.term2[order[j]] = logical_ket(spec.encoding, 1 - logical1);
    }
    state.validate();
    return state;
}

std::vector<int> default_cv_signs(const GhzSpec& spec) {
    check_spec(spec);
    const std::vector<int> order = spec.effective_order();
    std::vector<int> signs(spec.sites, -1);
    for (int j = 0; j < spec.r; ++j) signs[order[j]] = +1;
    return signs;
}

}  // namespace ghznl
