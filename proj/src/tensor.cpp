#include "ghznl/tensor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ghznl {

namespace {

long checked_total_dim(const std::vector<int>& dims, long cap) {
    long total = 1;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (dims[j] < 1) {
            throw std::invalid_argument("dense state: nonpositive dimension at site " +
                                        std::to_string(j + 1));
        }
        total *= dims[j];
        if (total > cap) {
            std::ostringstream msg;
            msg << "dense state: total dimension exceeds cap " << cap
                << "; use the factorized path";
            throw std::invalid_argument(msg.str());
        }
    }
    return total;
}

void check_site_dims(const RankTwoState& state, const ProductObservable& obs,
                     const ProductChannel* channel) {
    if (obs.sites() != state.sites()) {
        std::ostringstream msg;
        msg << "factorized_moment: observable has " << obs.sites()
            << " factors but state has " << state.sites() << " sites";
        throw std::invalid_argument(msg.str());
    }
    if (channel && static_cast<int>(channel->size()) != state.sites()) {
        std::ostringstream msg;
        msg << "factorized_moment: channel has " << channel->size()
            << " Kraus sets but state has " << state.sites() << " sites";
        throw std::invalid_argument(msg.str());
    }
    for (int j = 0; j < state.sites(); ++j) {
        const int d = state.dim(j);
        const auto& op = obs.site_ops[j];
        if (op.rows() != d || op.cols() != d) {
            std::ostringstream msg;
            msg << "factorized_moment: operator is " << op.rows() << "x" << op.cols()
                << " but site " << j + 1 << " has dimension " << d;
            throw std::invalid_argument(msg.str());
        }
        if (channel) {
            for (const auto& k : (*channel)[j]) {
                if (k.rows() != d || k.cols() != d) {
                    std::ostringstream msg;
                    msg << "factorized_moment: Kraus operator is " << k.rows() << "x"
                        << k.cols() << " but site " << j + 1 << " has dimension " << d;
                    throw std::invalid_argument(msg.str());
                }
            }
        }
    }
}

// <bra| sum_k K^dag O K |ket>, with the identity channel when kraus == nullptr.
Complex site_factor(const LocalKet& bra, const LocalKet& ket, const LocalOperator& op,
                    const KrausSet* kraus) {
    if (!kraus) return bra.dot(op * ket);
    Complex acc(0.0, 0.0);
    for (const auto& k : *kraus) acc += (k * bra).dot(op * (k * ket));
    return acc;
}

// Applies a local operator at `site` to a full-space vector.
Eigen::VectorXcd apply_local(const LocalOperator& op, int site,
                             const std::vector<int>& dims, const Eigen::VectorXcd& in) {
    const int d = dims[site];
    long left = 1, right = 1;
    for (int j = 0; j < site; ++j) left *= dims[j];
    for (std::size_t j = site + 1; j < dims.size(); ++j) right *= dims[j];

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (long l = 0; l < left; ++l) {
        for (long r = 0; r < right; ++r) {
            const long base = l * d * right + r;
            for (int a = 0; a < d; ++a) {
                Complex acc(0.0, 0.0);
                for (int b = 0; b < d; ++b) acc += op(a, b) * in(base + b * right);
                out(base + a * right) = acc;
            }
        }
    }
    return out;
}

// K rho (K applied at `site` from the left) on a full-space density matrix.
Eigen::MatrixXcd apply_local_left(const LocalOperator& op, int site,
                                  const std::vector<int>& dims, const Eigen::MatrixXcd& rho,
                                  bool parallel) {
    const int d = dims[site];
    long left = 1, right = 1;
    for (int j = 0; j < site; ++j) left *= dims[j];
    for (std::size_t j = site + 1; j < dims.size(); ++j) right *= dims[j];

    const long n = rho.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
#pragma omp parallel for schedule(static) if (parallel && n >= 256)
    for (long col = 0; col < n; ++col) {
        for (long l = 0; l < left; ++l) {
            for (long r = 0; r < right; ++r) {
                const long base = l * d * right + r;
                for (int a = 0; a < d; ++a) {
                    Complex acc(0.0, 0.0);
                    for (int b = 0; b < d; ++b) acc += op(a, b) * rho(base + b * right, col);
                    out(base + a * right, col) = acc;
                }
            }
        }
    }
    return out;
}

DenseState apply_channel_impl(const DenseState& state, int site, const KrausSet& kraus,
                              bool parallel) {
    if (site < 0 || site >= static_cast<int>(state.dims.size())) {
        throw std::invalid_argument("apply_channel_dense: site " + std::to_string(site + 1) +
                                    " out of range");
    }
    const int d = state.dims[site];
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw std::invalid_argument("apply_channel_dense: Kraus dimension mismatch at site " +
                                        std::to_string(site + 1));
        }
    }
    if (!kraus_complete(kraus)) {
        throw std::invalid_argument("apply_channel_dense: Kraus set at site " +
                                    std::to_string(site + 1) + " is not trace preserving");
    }

    DenseState rho_state = state.to_density();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho_state.rho.rows(), rho_state.rho.cols());
    for (const auto& k : kraus) {
        // K rho K^dag; the input is Hermitian, so (K rho)^dag = rho K^dag.
        Eigen::MatrixXcd k_rho = apply_local_left(k, site, state.dims, rho_state.rho, parallel);
        out += apply_local_left(k, site, state.dims, k_rho.adjoint(), parallel);
    }
    rho_state.rho = std::move(out);
    return rho_state;
}

}  // namespace

Complex RankTwoState::overlap_product() const {
    Complex p(1.0, 0.0);
    for (int j = 0; j < sites(); ++j) p *= term1[j].dot(term2[j]);
    return p;
}

double RankTwoState::squared_norm() const {
    const Complex cross = std::conj(amp1) * amp2 * overlap_product();
    return std::norm(amp1) + std::norm(amp2) + 2.0 * cross.real();
}

void RankTwoState::validate() const {
    if (term1.size() != term2.size() || term1.empty()) {
        throw std::invalid_argument("RankTwoState: term lists empty or of unequal length");
    }
    for (int j = 0; j < sites(); ++j) {
        if (term1[j].size() != term2[j].size()) {
            throw std::invalid_argument("RankTwoState: dimension mismatch at site " +
                                        std::to_string(j + 1));
        }
        if (std::abs(term1[j].norm() - 1.0) > kNormTol ||
            std::abs(term2[j].norm() - 1.0) > kNormTol) {
            throw std::invalid_argument("RankTwoState: non-normalized local vector at site " +
                                        std::to_string(j + 1));
        }
    }
    if (std::abs(squared_norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("RankTwoState: state norm deviates from 1");
    }
}

RankTwoState RankTwoState::normalized(Complex amp1, Complex amp2,
                                      std::vector<LocalKet> term1,
                                      std::vector<LocalKet> term2) {
    RankTwoState state{amp1, amp2, std::move(term1), std::move(term2)};
    for (auto& v : state.term1) v.normalize();
    for (auto& v : state.term2) v.normalize();
    const double n2 = state.squared_norm();
    if (n2 <= kNormTol) {
        throw std::invalid_argument("RankTwoState: terms cancel, cannot normalize");
    }
    const double scale = 1.0 / std::sqrt(n2);
    state.amp1 *= scale;
    state.amp2 *= scale;
    return state;
}

long DenseState::total_dim() const {
    long total = 1;
    for (int d : dims) total *= d;
    return total;
}

DenseState DenseState::from_vector(std::vector<int> dims, Eigen::VectorXcd psi, long cap) {
    const long total = checked_total_dim(dims, cap);
    if (psi.size() != total) {
        throw std::invalid_argument("DenseState: vector length does not match site dimensions");
    }
    if (std::abs(psi.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("DenseState: pure state must be unit norm");
    }
    DenseState s;
    s.dims = std::move(dims);
    s.psi = std::move(psi);
    s.pure = true;
    return s;
}

DenseState DenseState::from_density(std::vector<int> dims, Eigen::MatrixXcd rho, long cap) {
    const long total = checked_total_dim(dims, cap);
    if (rho.rows() != total || rho.cols() != total) {
        throw std::invalid_argument("DenseState: density matrix does not match site dimensions");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kChannelTol) {
        throw std::invalid_argument("DenseState: density matrix must be Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > kNormTol || std::abs(rho.trace().imag()) > kNormTol) {
        throw std::invalid_argument("DenseState: density matrix must have unit trace");
    }
    DenseState s;
    s.dims = std::move(dims);
    s.rho = std::move(rho);
    s.pure = false;
    return s;
}

DenseState DenseState::to_density() const {
    if (!pure) return *this;
    DenseState s;
    s.dims = dims;
    s.rho = psi * psi.adjoint();
    s.pure = false;
    return s;
}

Complex factorized_moment(const RankTwoState& state, const ProductObservable& obs,
                          const ProductChannel* channel) {
    check_site_dims(state, obs, channel);
    const std::vector<LocalKet>* terms[2] = {&state.term1, &state.term2};
    const Complex amps[2] = {state.amp1, state.amp2};

    Complex total(0.0, 0.0);
    for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
            Complex prod = std::conj(amps[u]) * amps[v];
            for (int j = 0; j < state.sites() && prod != Complex(0.0, 0.0); ++j) {
                const KrausSet* kraus = channel ? &(*channel)[j] : nullptr;
                prod *= site_factor((*terms[u])[j], (*terms[v])[j], obs.site_ops[j], kraus);
            }
            total += prod;
        }
    }
    return total;
}

DenseState to_dense(const RankTwoState& state, long cap) {
    std::vector<int> dims(state.sites());
    for (int j = 0; j < state.sites(); ++j) dims[j] = state.dim(j);
    const long total = checked_total_dim(dims, cap);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(total);
    for (long idx = 0; idx < total; ++idx) {
        Complex c1 = state.amp1, c2 = state.amp2;
        long rest = idx;
        for (int j = state.sites() - 1; j >= 0; --j) {
            const int digit = static_cast<int>(rest % dims[j]);
            rest /= dims[j];
            c1 *= state.term1[j](digit);
            c2 *= state.term2[j](digit);
        }
        psi(idx) = c1 + c2;
    }
    return DenseState::from_vector(std::move(dims), std::move(psi), cap);
}

Complex dense_moment(const DenseState& state, const ProductObservable& obs) {
    if (obs.sites() != static_cast<int>(state.dims.size())) {
        throw std::invalid_argument("dense_moment: observable/state site count mismatch");
    }
    for (int j = 0; j < obs.sites(); ++j) {
        if (obs.site_ops[j].rows() != state.dims[j]) {
            throw std::invalid_argument("dense_moment: operator dimension mismatch at site " +
                                        std::to_string(j + 1));
        }
    }
    if (state.pure) {
        Eigen::VectorXcd phi = state.psi;
        for (int j = 0; j < obs.sites(); ++j) phi = apply_local(obs.site_ops[j], j, state.dims, phi);
        return state.psi.dot(phi);
    }
    Eigen::MatrixXcd acc = state.rho;
    for (int j = 0; j < obs.sites(); ++j) {
        acc = apply_local_left(obs.site_ops[j], j, state.dims, acc, true);
    }
    return acc.trace();
}

DenseState apply_channel_dense(const DenseState& state, int site, const KrausSet& kraus) {
    return apply_channel_impl(state, site, kraus, true);
}

DenseState apply_channel_dense_serial(const DenseState& state, int site, const KrausSet& kraus) {
    return apply_channel_impl(state, site, kraus, false);
}

bool kraus_complete(const KrausSet& kraus, double tol) {
    if (kraus.empty()) return false;
    const long d = kraus.front().rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ghznl
