#include "ghznl/criteria.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ghznl/lhv_oracle.hpp"

namespace ghznl {

namespace {

double trusted_efficiency_product(const Scenario& scenario) {
    if (!scenario.loss) return 1.0;
    const std::vector<double> etas = site_efficiencies(*scenario.loss, scenario);
    double prod = 1.0;
    for (int j = 0; j < scenario.sites; ++j) {
        if (scenario.is_trusted(j)) prod *= etas[j];
    }
    return prod;
}

ProductChannel scenario_channel(const Scenario& scenario) {
    return scenario.loss ? per_site_kraus(*scenario.loss, scenario) : ProductChannel{};
}

// Confirms the square-corner bounds against the brute-force enumeration
// once per (N, selector); later lookups are cache hits.
void confirm_corner_bound(int sites, Selector selector, double expected) {
    static std::mutex mutex;
    static std::map<std::pair<int, Selector>, double> cache;
    double value;
    {
        std::scoped_lock lock(mutex);
        auto it = cache.find({sites, selector});
        if (it != cache.end()) {
            value = it->second;
        } else {
            value = lhv_max(sites, selector);
            cache.emplace(std::make_pair(sites, selector), value);
        }
    }
    if (std::abs(value - expected) > kOracleTol) {
        throw std::logic_error("qubit_criterion: LHV oracle disagrees with the square-corner "
                               "bound at N = " + std::to_string(sites));
    }
}

}  // namespace

void Scenario::validate() const {
    if (sites < 1) {
        throw std::invalid_argument("Scenario: need at least 1 site");
    }
    for (int site : trusted) {
        if (site < 0 || site >= sites) {
            throw std::invalid_argument("Scenario: trusted site " + std::to_string(site + 1) +
                                        " out of range 1.." + std::to_string(sites));
        }
    }
}

NonlocalityClass class_for_trust(int trusted_count, int sites) {
    if (trusted_count == 0) return NonlocalityClass::BellNonlocality;
    if (trusted_count == 1) return NonlocalityClass::MultipartiteEprSteering;
    if (trusted_count == sites) return NonlocalityClass::Entanglement;
    return NonlocalityClass::EntanglementWithUntrusted;
}

std::string to_string(NonlocalityClass c) {
    switch (c) {
        case NonlocalityClass::Entanglement: return "entanglement";
        case NonlocalityClass::EntanglementWithUntrusted: return "entanglement-with-untrusted";
        case NonlocalityClass::MultipartiteEprSteering: return "multipartite-EPR-steering";
        case NonlocalityClass::BellNonlocality: return "Bell-nonlocality";
    }
    throw std::logic_error("to_string: unknown nonlocality class");
}

CriterionReport make_report(std::string criterion, double left, double bound,
                            const Scenario& scenario) {
    CriterionReport report;
    report.criterion = std::move(criterion);
    report.left = left;
    report.bound = bound;
    if (bound > 0.0) {
        report.ratio = left / bound;
    } else {
        report.ratio = left > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    report.violated = left > bound + kViolationMargin;
    report.cls = class_for_trust(scenario.T(), scenario.sites);
    return report;
}

double cv_left(const RankTwoState& state, const Scenario& scenario,
               const std::vector<int>& signs) {
    scenario.validate();
    if (scenario.encoding != Encoding::CvFock) {
        throw std::invalid_argument("cv_left: requires the cv-fock encoding");
    }
    if (static_cast<int>(signs.size()) != state.sites() || state.sites() != scenario.sites) {
        throw std::invalid_argument("cv_left: sign/site count mismatch");
    }
    ProductObservable obs;
    obs.site_ops.reserve(signs.size());
    for (int s : signs) {
        if (s != 1 && s != -1) throw std::invalid_argument("cv_left: signs must be +1 or -1");
        obs.site_ops.push_back(s > 0 ? creator() : annihilator());
    }
    const ProductChannel channel = scenario_channel(scenario);
    return std::abs(factorized_moment(state, obs, channel.empty() ? nullptr : &channel));
}

double cv_right(const RankTwoState& state, const Scenario& scenario) {
    scenario.validate();
    if (scenario.encoding != Encoding::CvFock) {
        throw std::invalid_argument("cv_right: requires the cv-fock encoding");
    }
    if (state.sites() != scenario.sites) {
        throw std::invalid_argument("cv_right: state/scenario site count mismatch");
    }
    ProductObservable obs;
    obs.site_ops.reserve(scenario.sites);
    const LocalOperator half_identity = 0.5 * LocalOperator::Identity(2, 2);
    for (int j = 0; j < scenario.sites; ++j) {
        obs.site_ops.push_back(scenario.is_trusted(j) ? number_op()
                                                      : LocalOperator(number_op() + half_identity));
    }
    const ProductChannel channel = scenario_channel(scenario);
    const Complex m = factorized_moment(state, obs, channel.empty() ? nullptr : &channel);
    if (std::abs(m.imag()) > kChannelTol || m.real() < -kChannelTol) {
        throw std::logic_error("cv_right: moment of a PSD observable came out negative");
    }
    return std::sqrt(std::max(0.0, m.real()));
}

CriterionReport cv_criterion(const RankTwoState& state, const Scenario& scenario,
                             const std::vector<int>& signs) {
    const double left = cv_left(state, scenario, signs);
    const double bound = cv_right(state, scenario);
    return make_report("cv-product-moment", left, bound, scenario);
}

double qubit_bound(int sites, int trusted_count, Selector selector, double eta_t) {
    if (sites < 2) throw std::invalid_argument("qubit_bound: need at least 2 sites");
    if (trusted_count < 0 || trusted_count > sites) {
        throw std::invalid_argument("qubit_bound: trusted count out of range");
    }
    if (!(eta_t >= 0.0 && eta_t <= 1.0)) {
        throw std::invalid_argument("qubit_bound: eta_t must lie in [0,1]");
    }
    const int n = sites, t = trusted_count;
    double base;
    if (t >= 1) {
        base = selector == Selector::RePlusIm ? std::exp2(0.5 * (n - t + 1))
                                              : std::exp2(0.5 * (n - t));
    } else {
        const bool odd = n % 2 != 0;
        switch (selector) {
            case Selector::Modulus:
                base = std::exp2(0.5 * n);
                break;
            case Selector::Re:
            case Selector::Im:
                base = odd ? std::exp2(0.5 * (n - 1)) : std::exp2(0.5 * n);
                break;
            case Selector::RePlusIm:
                base = odd ? std::exp2(0.5 * (n + 1)) : std::exp2(0.5 * n);
                break;
            default:
                throw std::logic_error("qubit_bound: unknown selector");
        }
    }
    return base * std::pow(eta_t, t);
}

bool qubit_bound_needs_oracle(int sites, int trusted_count, Selector selector) {
    if (trusted_count != 0) return false;
    const bool odd = sites % 2 != 0;
    if ((selector == Selector::Re || selector == Selector::Im) && !odd) return true;
    if (selector == Selector::RePlusIm && odd) return true;
    return false;
}

CriterionReport general_criterion(const RankTwoState& state, const Scenario& scenario,
                                  const GeneralObservables& obs, const std::vector<int>& signs) {
    scenario.validate();
    const int n = scenario.sites;
    if (static_cast<int>(obs.x_ops.size()) != n || static_cast<int>(obs.y_ops.size()) != n ||
        static_cast<int>(obs.c.size()) != n || static_cast<int>(signs.size()) != n ||
        state.sites() != n) {
        throw std::invalid_argument("general_criterion: per-site list lengths must all equal N");
    }
    if (!obs.squared_sum_ops.empty() && static_cast<int>(obs.squared_sum_ops.size()) != n) {
        throw std::invalid_argument("general_criterion: squared_sum_ops must be empty or length N");
    }

    const ProductChannel channel = scenario_channel(scenario);
    const ProductChannel* chan = channel.empty() ? nullptr : &channel;

    ProductObservable f_product;
    f_product.site_ops.reserve(n);
    for (int j = 0; j < n; ++j) {
        if (signs[j] != 1 && signs[j] != -1) {
            throw std::invalid_argument("general_criterion: signs must be +1 or -1");
        }
        f_product.site_ops.push_back(obs.x_ops[j] +
                                     Complex(0.0, static_cast<double>(signs[j])) * obs.y_ops[j]);
    }
    const double left = std::abs(factorized_moment(state, f_product, chan));

    ProductObservable right_product;
    right_product.site_ops.reserve(n);
    for (int j = 0; j < n; ++j) {
        LocalOperator squared = obs.squared_sum_ops.empty()
                                    ? LocalOperator(obs.x_ops[j] * obs.x_ops[j] +
                                                    obs.y_ops[j] * obs.y_ops[j])
                                    : obs.squared_sum_ops[j];
        if (scenario.is_trusted(j)) {
            squared -= obs.c[j] * LocalOperator::Identity(squared.rows(), squared.cols());
        }
        right_product.site_ops.push_back(std::move(squared));
    }
    const Complex m = factorized_moment(state, right_product, chan);
    if (std::abs(m.imag()) > kChannelTol || m.real() < -kChannelTol) {
        throw std::logic_error(
            "general_criterion: right-side moment came out negative; the supplied C_j do not "
            "bound these observables on this state");
    }
    return make_report("general-moment", left, std::sqrt(std::max(0.0, m.real())), scenario);
}

CriterionReport qubit_criterion(const RankTwoState& state, const Scenario& scenario,
                                const SettingBundle& bundle, Selector selector) {
    scenario.validate();
    if (scenario.encoding != Encoding::IdealQubit && scenario.encoding != Encoding::DualRail) {
        throw std::invalid_argument("qubit_criterion: requires ideal-qubit or dual-rail encoding");
    }
    if (scenario.encoding == Encoding::IdealQubit && scenario.loss) {
        throw std::invalid_argument(
            "qubit_criterion: loss is not applicable to ideal-qubit; use dual-rail");
    }
    if (bundle.encoding != scenario.encoding) {
        throw std::invalid_argument("qubit_criterion: bundle/scenario encoding mismatch");
    }

    const ProductChannel channel = scenario_channel(scenario);
    const double left =
        std::abs(pi_moment(state, bundle, selector, channel.empty() ? nullptr : &channel));
    const double bound = qubit_bound(scenario.sites, scenario.T(), selector, 1.0) *
                         trusted_efficiency_product(scenario);

    CriterionReport report = make_report("qubit-" + to_string(selector), left, bound, scenario);
    if (qubit_bound_needs_oracle(scenario.sites, scenario.T(), selector)) {
        if (scenario.sites <= kLhvSiteCap) {
            confirm_corner_bound(scenario.sites, selector,
                                 qubit_bound(scenario.sites, 0, selector, 1.0));
            report.bound_oracle_verified = true;
        }
    }
    return report;
}

}  // namespace ghznl
