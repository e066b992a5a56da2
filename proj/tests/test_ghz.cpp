#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ghznl/ghz.hpp"
#include "ghznl/tensor.hpp"

using namespace ghznl;

namespace {

// Basis label of a product term at one site (dim-2: 0/1, dual-rail: logical
// value behind |down>/|up>).
int logical_value(const LocalKet& ket) {
    if (ket.size() == 2) return std::abs(ket(1)) > 0.5 ? 1 : 0;
    if (std::abs(ket(2)) > 0.5) return 0;  // |down> carries logical 0
    return 1;
}

}  // namespace

TEST_CASE("GHZ(3, r=1) is (|011> + |100>)/sqrt(2)") {
    GhzSpec spec;
    spec.sites = 3;
    spec.r = 1;
    const RankTwoState state = build_ghz(spec);
    CHECK(logical_value(state.term1[0]) == 0);
    CHECK(logical_value(state.term1[1]) == 1);
    CHECK(logical_value(state.term1[2]) == 1);
    CHECK(logical_value(state.term2[0]) == 1);
    CHECK(logical_value(state.term2[1]) == 0);
    CHECK(logical_value(state.term2[2]) == 0);
    CHECK(std::abs(state.amp1 - Complex(1 / std::sqrt(2.0), 0)) < kNormTol);
    CHECK(std::abs(state.amp2 - Complex(1 / std::sqrt(2.0), 0)) < kNormTol);
}

TEST_CASE("phase phi = pi flips the second amplitude") {
    GhzSpec spec;
    spec.sites = 2;
    spec.r = 2;
    spec.phi = M_PI;
    const RankTwoState state = build_ghz(spec);
    CHECK(std::abs(state.amp2 - Complex(-1 / std::sqrt(2.0), 0)) < kNormTol);
    CHECK(logical_value(state.term1[0]) == 0);
    CHECK(logical_value(state.term2[0]) == 1);
}

TEST_CASE("swapping sites 2 and 3 turns |0011> into |0101>") {
    GhzSpec spec;
    spec.sites = 4;
    spec.r = 2;
    spec.site_order = {0, 2, 1, 3};
    const RankTwoState state = build_ghz(spec);
    const int expected1[] = {0, 1, 0, 1};
    for (int j = 0; j < 4; ++j) {
        CHECK(logical_value(state.term1[j]) == expected1[j]);
        CHECK(logical_value(state.term2[j]) == 1 - expected1[j]);
    }
}

TEST_CASE("normalization holds across the family") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
    for (int n = 2; n <= 50; n += 3) {
        GhzSpec spec;
        spec.sites = n;
        spec.r = 1 + static_cast<int>(rng() % n);
        spec.phi = phase(rng);
        spec.encoding = static_cast<Encoding>(rng() % 3);
        const RankTwoState state = build_ghz(spec);
        CHECK(std::abs(state.squared_norm() - 1.0) < kNormTol);
        CHECK(std::abs(state.overlap_product()) == 0.0);  // terms orthogonal for r >= 1
    }
}

TEST_CASE("permuted construction equals manual relabeling") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        GhzSpec spec;
        spec.sites = 3 + static_cast<int>(rng() % 5);
        spec.r = 1 + static_cast<int>(rng() % spec.sites);
        spec.phi = 0.3;

        std::vector<int> perm(spec.sites);
        for (int j = 0; j < spec.sites; ++j) perm[j] = j;
        std::shuffle(perm.begin(), perm.end(), rng);

        const RankTwoState plain = build_ghz(spec);
        GhzSpec permuted_spec = spec;
        permuted_spec.site_order = perm;
        const RankTwoState permuted = build_ghz(permuted_spec);

        for (int j = 0; j < spec.sites; ++j) {
            CHECK((plain.term1[j] - permuted.term1[perm[j]]).norm() < kNormTol);
            CHECK((plain.term2[j] - permuted.term2[perm[j]]).norm() < kNormTol);
        }
    }
}

TEST_CASE("r = 0 and r > N are rejected") {
    GhzSpec spec;
    spec.sites = 3;
    spec.r = 0;
    CHECK_THROWS_AS(build_ghz(spec), std::invalid_argument);
    spec.r = 4;
    CHECK_THROWS_AS(build_ghz(spec), std::invalid_argument);
}

TEST_CASE("invalid permutations are rejected") {
    GhzSpec spec;
    spec.sites = 3;
    spec.r = 2;
    spec.site_order = {0, 0, 1};
    CHECK_THROWS_AS(build_ghz(spec), std::invalid_argument);
    spec.site_order = {0, 1};
    CHECK_THROWS_AS(build_ghz(spec), std::invalid_argument);
}

TEST_CASE("default CV signs follow the permuted r-block") {
    GhzSpec spec;
    spec.sites = 4;
    spec.r = 2;
    spec.site_order = {0, 2, 1, 3};
    const std::vector<int> signs = default_cv_signs(spec);
    CHECK(signs == std::vector<int>{+1, -1, +1, -1});
}
