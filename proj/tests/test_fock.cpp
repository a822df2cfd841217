#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tmd/fock.hpp"
#include "tmd/numeric.hpp"
#include "tmd/rng.hpp"

using namespace tmd;

namespace {

ModeOccupation occ_of(std::vector<int> counts) {
    ModeOccupation occ(static_cast<int>(counts.size()));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        occ.set_occupation(static_cast<int>(i), counts[i]);
    }
    return occ;
}

// independent routing oracle: a photon kept with probability t, so k of q
// kept follows the binomial pmf
double binomial_pmf(int q, int k, double t) {
    return binomial_coefficient(q, k) * std::pow(t, k) * std::pow(1.0 - t, q - k);
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("number state construction") {
    const FockState vacuum = make_number_state(0, 23, 0);
    CHECK(vacuum.term_count() == 1);
    CHECK(vacuum.photon_number() == 0);
    CHECK(vacuum.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

    const FockState two = make_number_state(2, 23, 0);
    REQUIRE(two.term_count() == 1);
    ModeOccupation expected(23);
    expected.set_occupation(0, 2);
    CHECK(two.amplitude(expected) == 1.0);

    const FockState five = make_number_state(5, 23, 0);
    CHECK(five.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(make_number_state(1, 23, 23), std::out_of_range);
    CHECK_THROWS_AS(make_number_state(1, 23, -1), std::out_of_range);
    CHECK_THROWS_AS(make_number_state(-1, 23, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_number_state(1, 24, 0), std::invalid_argument);
}

TEST_CASE("single photon 50/50 split") {
    const FockState in = make_number_state(1, 3, 0);
    const FockState out = apply_split(in, SplitSpec{0, 1, 2, 0.5});

    REQUIRE(out.term_count() == 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(out.amplitude(occ_of({0, 1, 0})) == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(out.amplitude(occ_of({0, 0, 1})) == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(out.photon_number() == 1);
}

TEST_CASE("vacuum passes through any split unchanged") {
    const FockState vacuum = make_number_state(0, 4, 1);
    const FockState out = apply_split(vacuum, SplitSpec{1, 2, 3, 0.3});
    CHECK(out.term_count() == 1);
    CHECK(out.amplitude(occ_of({0, 0, 0, 0})) == 1.0);
}

TEST_CASE("two photons split 50/50: 1/4, 1/2, 1/4") {
    const FockState in = make_number_state(2, 2, 0);
    const FockState out = apply_split(in, SplitSpec{0, 0, 1, 0.5});

    REQUIRE(out.term_count() == 3);
    const double p20 = std::pow(out.amplitude(occ_of({2, 0})), 2);
    const double p11 = std::pow(out.amplitude(occ_of({1, 1})), 2);
    const double p02 = std::pow(out.amplitude(occ_of({0, 2})), 2);
    CHECK(p20 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(p11 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p02 == doctest::Approx(0.25).epsilon(1e-14));

    // binomial routing oracle, term by term
    for (int kept = 0; kept <= 2; ++kept) {
        ModeOccupation occ(2);
        occ.set_occupation(0, kept);
        occ.set_occupation(1, 2 - kept);
        CHECK(std::pow(out.amplitude(occ), 2) ==
              doctest::Approx(binomial_pmf(2, kept, 0.5)).epsilon(1e-14));
    }
}

TEST_CASE("loss tap limits") {
    const FockState in = make_number_state(1, 3, 0);

    const FockState lossless = apply_loss(in, 0, 2, 1.0);
    CHECK(lossless.term_count() == 1);
    CHECK(lossless.amplitude(occ_of({1, 0, 0})) == 1.0);

    const FockState typical = apply_loss(in, 0, 2, 0.97);
    CHECK(std::pow(typical.amplitude(occ_of({1, 0, 0})), 2) ==
          doctest::Approx(0.97).epsilon(1e-14));
    CHECK(std::pow(typical.amplitude(occ_of({0, 0, 1})), 2) ==
          doctest::Approx(0.03).epsilon(1e-13));

    const FockState opaque = apply_loss(in, 0, 2, 0.0);
    CHECK(opaque.term_count() == 1);
    CHECK(opaque.amplitude(occ_of({0, 0, 1})) == 1.0);
}

TEST_CASE("split contract violations") {
    const FockState in = make_number_state(2, 4, 0);

    CHECK_THROWS_AS(apply_split(in, SplitSpec{0, 1, 2, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(apply_split(in, SplitSpec{0, 1, 2, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(apply_split(in, SplitSpec{0, 1, 1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(apply_split(in, SplitSpec{0, 1, 0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(apply_split(in, SplitSpec{0, 4, 1, 0.5}), std::out_of_range);

    // occupied output mode
    const FockState spread = apply_split(in, SplitSpec{0, 0, 1, 0.5});
    CHECK_THROWS_AS(apply_split(spread, SplitSpec{2, 1, 3, 0.5}), std::invalid_argument);
}

TEST_CASE("split with t=1 moves photons deterministically") {
    const FockState in = make_number_state(3, 3, 0);
    const FockState out = apply_split(in, SplitSpec{0, 1, 2, 1.0});
    REQUIRE(out.term_count() == 1);
    CHECK(out.amplitude(occ_of({0, 3, 0})) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("marginal probabilities") {
    SUBCASE("full mode set is the Born rule") {
        FockState state = make_number_state(2, 3, 0);
        state = apply_split(state, SplitSpec{0, 0, 1, 0.5});
        const std::vector<int> all = {0, 1, 2};
        const ProbabilityMap marginal = mode_marginal_probabilities(state, all);
        REQUIRE(marginal.size() == state.term_count());
        for (const auto& [occ, amp] : state.terms()) {
            CHECK(marginal.at(occ) == doctest::Approx(amp * amp).epsilon(1e-15));
        }
    }

    SUBCASE("vacuum marginal is a point mass on all-zero") {
        const FockState vacuum = make_number_state(0, 5, 0);
        const std::vector<int> subset = {1, 3};
        const ProbabilityMap marginal = mode_marginal_probabilities(vacuum, subset);
        REQUIRE(marginal.size() == 1);
        CHECK(marginal.at(occ_of({0, 0})) == 1.0);
    }

    SUBCASE("balanced two-level tree spreads one photon uniformly") {
        FockState state = make_number_state(1, 4, 0);
        state = apply_split(state, SplitSpec{0, 0, 1, 0.5});
        state = apply_split(state, SplitSpec{0, 0, 2, 0.5});
        state = apply_split(state, SplitSpec{1, 1, 3, 0.5});
        const std::vector<int> leaves = {0, 1, 2, 3};
        const ProbabilityMap marginal = mode_marginal_probabilities(state, leaves);
        REQUIRE(marginal.size() == 4);
        for (const auto& [occ, prob] : marginal) {
            CHECK(prob == doctest::Approx(0.25).epsilon(1e-14));
        }
    }

    SUBCASE("marginalizing a split-off mode merges terms") {
        FockState state = make_number_state(1, 2, 0);
        state = apply_split(state, SplitSpec{0, 0, 1, 0.7});
        const std::vector<int> kept = {0};
        const ProbabilityMap marginal = mode_marginal_probabilities(state, kept);
        REQUIRE(marginal.size() == 2);
        ModeOccupation one(1);
        one.set_occupation(0, 1);
        CHECK(marginal.at(one) == doctest::Approx(0.7).epsilon(1e-14));
        CHECK(marginal.at(ModeOccupation(1)) == doctest::Approx(0.3).epsilon(1e-14));
    }

    SUBCASE("bad subsets are rejected") {
        const FockState state = make_number_state(1, 3, 0);
        const std::vector<int> dup = {0, 0};
        const std::vector<int> oob = {0, 3};
        CHECK_THROWS_AS(mode_marginal_probabilities(state, dup), std::invalid_argument);
        CHECK_THROWS_AS(mode_marginal_probabilities(state, oob), std::out_of_range);
    }
}

// Random tree networks: norm and photon number stay conserved after every
// transform and the term count never exceeds C(n + M - 1, M - 1).
TEST_CASE("conservation laws under random split sequences") {
    Xoshiro256StarStar rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        const int modes = 3 + static_cast<int>(rng.next_pow2(8));  // 3..10
        const int photons = static_cast<int>(rng.next_pow2(8)) % 6;
        FockState state = make_number_state(photons, modes, 0);

        std::vector<int> active = {0};
        std::vector<int> free_modes;
        for (int m = 1; m < modes; ++m) free_modes.push_back(m);

        while (!free_modes.empty()) {
            const int in_mode = active[rng.next() % active.size()];
            const int out_b = free_modes.back();
            free_modes.pop_back();
            const double t = rng.next_double();
            if (!free_modes.empty() && rng.bernoulli(0.3)) {
                // move-style split into two fresh modes
                const int out_a = free_modes.back();
                free_modes.pop_back();
                state = apply_split(state, SplitSpec{in_mode, out_a, out_b, t});
                active.push_back(out_a);
            } else {
                state = apply_loss(state, in_mode, out_b, t);
            }
            active.push_back(out_b);

            CHECK(state.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
            for (const auto& [occ, amp] : state.terms()) {
                CHECK(occ.total_photons() == photons);
            }
            CHECK(static_cast<double>(state.term_count()) <=
                  binomial_coefficient(photons + modes - 1, modes - 1));
        }
    }
}

}  // TEST_SUITE
