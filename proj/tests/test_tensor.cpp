#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "ghznl/ghz.hpp"
#include "ghznl/loss.hpp"
#include "ghznl/observables.hpp"
#include "ghznl/tensor.hpp"
#include "test_support.hpp"

using namespace ghznl;
using test_support::random_hermitian;
using test_support::random_loss_kraus;
using test_support::random_operator;
using test_support::random_rank_two_state;

namespace {

ProductObservable identity_observable(const RankTwoState& state) {
    ProductObservable obs;
    for (int j = 0; j < state.sites(); ++j) {
        obs.site_ops.push_back(LocalOperator::Identity(state.dim(j), state.dim(j)));
    }
    return obs;
}

RankTwoState ghz(int sites, int r, double phi = 0.0, Encoding enc = Encoding::CvFock) {
    GhzSpec spec;
    spec.sites = sites;
    spec.r = r;
    spec.phi = phi;
    spec.encoding = enc;
    return build_ghz(spec);
}

}  // namespace

TEST_CASE("identity observable gives the norm") {
    const RankTwoState state = ghz(3, 3);
    const Complex m = factorized_moment(state, identity_observable(state));
    CHECK(std::abs(m - Complex(1.0, 0.0)) < kNormTol);
}

TEST_CASE("all-sigma-x moment on GHZ(3, r=3) matches the dense oracle value") {
    const RankTwoState state = ghz(3, 3, 0.0, Encoding::IdealQubit);
    ProductObservable obs({pauli_x(), pauli_x(), pauli_x()});
    const Complex m = factorized_moment(state, obs);
    CHECK(std::abs(m - Complex(1.0, 0.0)) < kAnalyticTol);
    CHECK(std::abs(dense_moment(to_dense(state), obs) - m) < kAnalyticTol);
}

TEST_CASE("zero factor annihilates the moment") {
    const RankTwoState state = ghz(4, 2);
    ProductObservable obs = identity_observable(state);
    obs.site_ops[2] = LocalOperator::Zero(2, 2);
    CHECK(std::abs(factorized_moment(state, obs)) == 0.0);
}

TEST_CASE("F-pair moment on GHZ(2, r=2) reaches 2") {
    const RankTwoState state = ghz(2, 2, 0.0, Encoding::IdealQubit);
    const LocalOperator f = pauli_x() + Complex(0, 1) * pauli_y();
    const Complex m = dense_moment(to_dense(state), ProductObservable({f, f}));
    CHECK(std::abs(m - Complex(2.0, 0.0)) < kAnalyticTol);
}

TEST_CASE("dimension mismatch names the offending site") {
    const RankTwoState state = ghz(3, 1);
    ProductObservable obs = identity_observable(state);
    obs.site_ops[1] = LocalOperator::Identity(3, 3);
    CHECK_THROWS_WITH_AS(factorized_moment(state, obs),
                         doctest::Contains("site 2"), std::invalid_argument);
}

TEST_CASE("dense cap exceeded points at the factorized path") {
    GhzSpec spec;
    spec.sites = 11;
    spec.r = 11;
    spec.encoding = Encoding::DualRail;  // 3^11 > 3^10
    CHECK_THROWS_WITH_AS(to_dense(build_ghz(spec)), doctest::Contains("factorized"),
                         std::invalid_argument);
}

TEST_CASE("maximally mixed single site has no sigma-z polarisation") {
    // One dim-2 site next to a trivial partner so the state is multipartite.
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    const DenseState state = DenseState::from_density({2, 2}, rho);
    const Complex m = dense_moment(state, ProductObservable({pauli_z(), LocalOperator::Identity(2, 2)}));
    CHECK(std::abs(m) < kNormTol);
}

TEST_CASE("factorized and dense paths agree on random instances, with and without loss") {
    for (int trial = 0; trial < 60; ++trial) {
        const int sites = 2 + trial % 5;
        const int dim = trial % 2 == 0 ? 2 : 3;
        const RankTwoState state = random_rank_two_state(sites, dim);
        ProductObservable obs;
        ProductChannel channel;
        for (int j = 0; j < sites; ++j) {
            obs.site_ops.push_back(random_operator(dim));
            channel.push_back(random_loss_kraus(dim));
        }

        const Complex plain_fact = factorized_moment(state, obs);
        const Complex plain_dense = dense_moment(to_dense(state), obs);
        CHECK(std::abs(plain_fact - plain_dense) < kAnalyticTol);

        const Complex lossy_fact = factorized_moment(state, obs, &channel);
        DenseState rho = to_dense(state).to_density();
        for (int j = 0; j < sites; ++j) rho = apply_channel_dense(rho, j, channel[j]);
        const Complex lossy_dense = dense_moment(rho, obs);
        CHECK(std::abs(lossy_fact - lossy_dense) < kAnalyticTol);
    }
}

TEST_CASE("Hermitian product observables have real moments") {
    for (int trial = 0; trial < 40; ++trial) {
        const int sites = 2 + trial % 4;
        const int dim = trial % 2 == 0 ? 2 : 3;
        const RankTwoState state = random_rank_two_state(sites, dim);
        ProductObservable obs;
        for (int j = 0; j < sites; ++j) obs.site_ops.push_back(random_hermitian(dim));
        CHECK(std::abs(factorized_moment(state, obs).imag()) < kChannelTol);
    }
}

TEST_CASE("identity Kraus set leaves a dense state unchanged") {
    const DenseState state = to_dense(ghz(3, 2)).to_density();
    const KrausSet identity{LocalOperator::Identity(2, 2)};
    const DenseState out = apply_channel_dense(state, 1, identity);
    CHECK((out.rho - state.rho).cwiseAbs().maxCoeff() < kNormTol);
}

TEST_CASE("total dual-rail loss lands every photon in the vacuum") {
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(3);
    up(1) = 1.0;
    const DenseState state = DenseState::from_vector({3}, up);
    const DenseState out = apply_channel_dense(state, 0, dual_rail_loss_kraus(0.0));
    Eigen::MatrixXcd vacuum = Eigen::MatrixXcd::Zero(3, 3);
    vacuum(0, 0) = 1.0;
    CHECK((out.rho - vacuum).cwiseAbs().maxCoeff() < kNormTol);
}

TEST_CASE("half-strength amplitude damping splits |1><1| evenly") {
    Eigen::VectorXcd one = Eigen::VectorXcd::Zero(2);
    one(1) = 1.0;
    const DenseState state = DenseState::from_vector({2}, one);
    const DenseState out = apply_channel_dense(state, 0, fock_loss_kraus(0.5));
    CHECK(std::abs(out.rho(0, 0) - Complex(0.5, 0)) < kNormTol);
    CHECK(std::abs(out.rho(1, 1) - Complex(0.5, 0)) < kNormTol);
    CHECK(std::abs(out.rho(0, 1)) < kNormTol);
}

TEST_CASE("non-complete Kraus sets are rejected") {
    const DenseState state = to_dense(ghz(2, 1));
    const KrausSet bad{0.5 * LocalOperator::Identity(2, 2)};
    CHECK_THROWS_AS(apply_channel_dense(state, 0, bad), std::invalid_argument);
}

TEST_CASE("channels preserve trace, Hermiticity and positivity") {
    for (int trial = 0; trial < 20; ++trial) {
        const int sites = 2 + trial % 3;
        const int dim = trial % 2 == 0 ? 2 : 3;
        DenseState rho = to_dense(random_rank_two_state(sites, dim)).to_density();
        for (int j = 0; j < sites; ++j) rho = apply_channel_dense(rho, j, random_loss_kraus(dim));

        CHECK(std::abs(rho.rho.trace().real() - 1.0) < kChannelTol);
        CHECK((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() < kChannelTol);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.rho);
        CHECK(solver.eigenvalues().minCoeff() > -kChannelTol);
    }
}

TEST_CASE("serial and OpenMP channel kernels produce identical output") {
    DenseState rho = to_dense(ghz(6, 3, 0.4, Encoding::DualRail)).to_density();
    const KrausSet kraus = dual_rail_loss_kraus(0.7);
    const DenseState a = apply_channel_dense(rho, 2, kraus);
    const DenseState b = apply_channel_dense_serial(rho, 2, kraus);
    CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("factorized cost stays linear: N = 200 in well under a second") {
    const RankTwoState state = ghz(200, 100);
    ProductObservable obs = identity_observable(state);
    const auto start = std::chrono::steady_clock::now();
    const Complex m = factorized_moment(state, obs);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(std::abs(m - Complex(1.0, 0.0)) < kNormTol);
    CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() < 1000);
}

TEST_CASE("rank-two validation catches bad states") {
    RankTwoState state = ghz(3, 2);
    state.amp1 *= 2.0;
    CHECK_THROWS_AS(state.validate(), std::invalid_argument);
}
