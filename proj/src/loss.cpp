#include "ghznl/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ghznl/criteria.hpp"

namespace ghznl {

namespace {

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("loss: efficiency must lie in [0,1], got " +
                                    std::to_string(eta));
    }
}

}  // namespace

KrausSet fock_loss_kraus(double eta) {
    check_eta(eta);
    LocalOperator k0 = LocalOperator::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(eta);
    LocalOperator k1 = LocalOperator::Zero(2, 2);
    k1(0, 1) = std::sqrt(1.0 - eta);
    return {k0, k1};
}

KrausSet dual_rail_loss_kraus(double eta) {
    check_eta(eta);
    const double root_eta = std::sqrt(eta);
    const double root_loss = std::sqrt(1.0 - eta);
    LocalOperator k0 = LocalOperator::Zero(3, 3);
    k0(0, 0) = 1.0;
    k0(1, 1) = root_eta;
    k0(2, 2) = root_eta;
    LocalOperator k1 = LocalOperator::Zero(3, 3);
    k1(0, 1) = root_loss;  // |vac><up|
    LocalOperator k2 = LocalOperator::Zero(3, 3);
    k2(0, 2) = root_loss;  // |vac><down|
    return {k0, k1, k2};
}

std::vector<double> site_efficiencies(const LossModel& model, const Scenario& scenario) {
    scenario.validate();
    check_eta(model.eta_trusted);
    check_eta(model.eta_untrusted);
    std::vector<double> etas(scenario.sites);
    for (int j = 0; j < scenario.sites; ++j) {
        etas[j] = scenario.is_trusted(j) ? model.eta_trusted : model.eta_untrusted;
    }
    for (const auto& [site, eta] : model.overrides) {
        if (site < 0 || site >= scenario.sites) {
            throw std::invalid_argument("loss: override for nonexistent site " +
                                        std::to_string(site + 1));
        }
        check_eta(eta);
        etas[site] = eta;
    }
    return etas;
}

ProductChannel per_site_kraus(const LossModel& model, const Scenario& scenario) {
    if (scenario.encoding == Encoding::IdealQubit) {
        throw std::invalid_argument(
            "loss: not applicable to the ideal-qubit encoding; use dual-rail");
    }
    const std::vector<double> etas = site_efficiencies(model, scenario);
    ProductChannel channel(scenario.sites);
    for (int j = 0; j < scenario.sites; ++j) {
        channel[j] = scenario.encoding == Encoding::CvFock ? fock_loss_kraus(etas[j])
                                                           : dual_rail_loss_kraus(etas[j]);
    }
    return channel;
}

}  // namespace ghznl
