#pragma once

#include <map>

#include "ghznl/tensor.hpp"
#include "ghznl/types.hpp"

namespace ghznl {

struct Scenario;  // criteria.hpp

/// Beam-splitter detection loss. eta_trusted / eta_untrusted are the class
/// defaults; per-site overrides win.
struct LossModel {
    double eta_trusted = 1.0;
    double eta_untrusted = 1.0;
    std::map<int, double> overrides;  // 0-based site -> efficiency
};

/// Amplitude-damping pair on the truncated Fock space {|0>,|1>}:
/// K0 = diag(1, sqrt(eta)), K1 = sqrt(1-eta) |0><1|.
KrausSet fock_loss_kraus(double eta);

/// Photon loss on the dual-rail space {|vac>,|up>,|down>}: either rail's
/// photon is lost to the vacuum with probability 1-eta. The GHZ components
/// carry at most one photon per mode, so the beam-splitter image stays
/// inside this truncated space and the channel is exact.
KrausSet dual_rail_loss_kraus(double eta);

/// Efficiency assigned to each site (trusted default, untrusted default,
/// overrides applied last).
std::vector<double> site_efficiencies(const LossModel& model, const Scenario& scenario);

/// Per-site Kraus sets matching the scenario's encoding. Loss is undefined
/// for the ideal-qubit encoding; request the dual-rail encoding instead.
ProductChannel per_site_kraus(const LossModel& model, const Scenario& scenario);

}  // namespace ghznl
