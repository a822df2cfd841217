#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tmd/coherent.hpp"
#include "tmd/detection.hpp"
#include "tmd/montecarlo.hpp"
#include "tmd/network.hpp"

#include "stat_helpers.hpp"

using namespace tmd;
using namespace tmd_test;

namespace {

constexpr std::int64_t kShots = 1000000;

McConfig fock_config(int n, double f, double eta, std::uint64_t seed,
                     std::int64_t shots = kShots) {
    McConfig config;
    config.shots = shots;
    config.seed = seed;
    config.params = FockMcParams{n, f, eta};
    return config;
}

std::vector<double> exact_pipeline(int n, double f, double eta) {
    const TmdLayout layout = build_layout();
    return click_distribution_from_state(propagate(NetworkConfig{f, n}), layout,
                                         DetectorModel{eta})
        .probs();
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("identical seed and config reproduce the histogram exactly") {
    const McConfig config = fock_config(3, 0.97, 0.43, 99, 50000);
    const McResult first = sample_fock_clicks(config);
    const McResult second = sample_fock_clicks(config);
    CHECK(first.histogram.counts == second.histogram.counts);
    CHECK(first.seed_used == 99);

    McConfig other = config;
    other.seed = 100;
    CHECK(sample_fock_clicks(other).histogram.counts != first.histogram.counts);
}

TEST_CASE("histogram bookkeeping") {
    const McResult result = sample_fock_clicks(fock_config(2, 0.97, 0.43, 5, 12345));
    CHECK(result.histogram.total() == 12345);
    double sum = 0.0;
    for (double p : result.empirical_probs) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero photons always give zero clicks") {
    const McResult result = sample_fock_clicks(fock_config(0, 0.97, 0.43, 1, 10000));
    CHECK(result.histogram.counts[0] == 10000);
}

TEST_CASE("two lossless photons at eta 0.7") {
    const McResult result = sample_fock_clicks(fock_config(2, 1.0, 0.7, 31337));
    const double sigma = std::sqrt(0.459375 * (1.0 - 0.459375) / kShots);
    CHECK(std::abs(result.empirical_probs[2] - 0.459375) <= 3.0 * sigma);
}

TEST_CASE("sampler agrees with the exact pipeline over the full grid") {
    // 4 sigma per bin at 1e6 shots, plus a chi-squared gate at alpha = 0.001
    for (double f : {1.0, 0.97}) {
        for (int n = 0; n <= 5; ++n) {
            const std::vector<double> exact_by_eta[3] = {
                exact_pipeline(n, f, 0.43),
                exact_pipeline(n, f, 0.7),
                exact_pipeline(n, f, 1.0),
            };
            const double etas[3] = {0.43, 0.7, 1.0};
            for (int e = 0; e < 3; ++e) {
                const McResult result =
                    sample_fock_clicks(fock_config(n, f, etas[e], 2024));
                double worst = 0.0;
                const bool ok = within_sigma(result.empirical_probs, exact_by_eta[e], kShots,
                                             kZ4Sigma, &worst);
                INFO("n=", n, " f=", f, " eta=", etas[e], " worst=", worst, " sigma");
                CHECK(ok);

                if (n > 0) {
                    const ChiSquared gof = chi_squared_pooled(result.histogram.counts,
                                                              exact_by_eta[e], kShots);
                    if (gof.pooled_bins >= 2) {
                        const double critical =
                            chi_squared_critical(gof.pooled_bins - 1, kZAlpha001);
                        INFO("chi2=", gof.statistic, " bins=", gof.pooled_bins);
                        CHECK(gof.statistic < critical);
                    }
                }
            }
        }
    }
}

TEST_CASE("coherent equal-loss sampler matches the analytic model") {
    McConfig config;
    config.shots = kShots;
    config.seed = 777;
    // product eta*l*mu0 = 2.65 split across the three factors
    config.params = CoherentMcParams{5.3, 0.5, CoherentLossMode::Equal, 1.0, 0.97};
    const McResult result = sample_coherent_clicks(config);

    const std::vector<double> expected = click_distribution(CoherentParams{5.3, 1.0, 0.5, 16});
    double worst = 0.0;
    CHECK(within_sigma(result.empirical_probs, expected, kShots, kZ3Sigma, &worst));
    INFO("worst deviation ", worst, " sigma");
}

TEST_CASE("dark coherent input never clicks") {
    McConfig config;
    config.shots = 5000;
    config.seed = 3;
    config.params = CoherentMcParams{0.0, 0.43, CoherentLossMode::Equal, 0.55, 0.97};
    const McResult result = sample_coherent_clicks(config);
    CHECK(result.histogram.counts[0] == 5000);
}

TEST_CASE("per-bin loss mode agrees with the independent-bin oracle") {
    const double f = 0.97;
    const double mu0 = 13.1;
    McConfig config;
    config.shots = kShots;
    config.seed = 2718;
    config.params = CoherentMcParams{mu0, 1.0, CoherentLossMode::PerBin, 0.55, f};
    const McResult result = sample_coherent_clicks(config);

    // splitting a coherent state leaves independent coherent states per bin,
    // so clicks are independent with probability 1 - exp(-mu0 f^b / 16)
    std::vector<double> bin_click(16);
    for (int mode = 0; mode < 16; ++mode) {
        bin_click[static_cast<std::size_t>(mode)] =
            1.0 - std::exp(-mu0 * std::pow(f, mode % 8) / 16.0);
    }
    const std::vector<double> expected = poisson_binomial(bin_click);
    double worst = 0.0;
    CHECK(within_sigma(result.empirical_probs, expected, kShots, kZ4Sigma, &worst));
    INFO("worst deviation ", worst, " sigma");
}

TEST_CASE("equal-loss approximation error is small but real") {
    // exact comparison, no sampling: per-bin model against the equal-loss
    // binomial at the matching average transmission
    const double f = 0.97;
    const double mu0 = 13.1;
    const double l_avg = (1.0 - std::pow(f, 8)) / (8.0 * (1.0 - f));

    std::vector<double> bin_click(16);
    for (int mode = 0; mode < 16; ++mode) {
        bin_click[static_cast<std::size_t>(mode)] =
            1.0 - std::exp(-mu0 * std::pow(f, mode % 8) / 16.0);
    }
    const std::vector<double> unequal = poisson_binomial(bin_click);
    const std::vector<double> equal =
        click_distribution(CoherentParams{mu0, l_avg, 1.0, 16});

    double tv = 0.0;
    for (std::size_t m = 0; m < equal.size(); ++m) tv += std::abs(unequal[m] - equal[m]);
    tv *= 0.5;
    CHECK(tv > 1e-4);
    CHECK(tv < 0.01);
}

TEST_CASE("dead-time replay") {
    const TimingConfig apparatus{110.0, 60.0, 0.05};

    SUBCASE("adjacent bins survive when the bin spacing beats the dead time") {
        const std::vector<DetectorClick> clicks = {{0, 3}, {0, 4}};
        const DeadTimeResult result = dead_time_sim(clicks, apparatus);
        CHECK(result.registered[0] == 2);
        CHECK(result.lost == 0);
    }

    SUBCASE("short spacing loses the second click") {
        const TimingConfig cramped{30.0, 60.0, 0.05};
        const std::vector<DetectorClick> clicks = {{0, 3}, {0, 4}};
        const DeadTimeResult result = dead_time_sim(clicks, cramped);
        CHECK(result.registered[0] == 1);
        CHECK(result.lost == 1);
    }

    SUBCASE("detectors are independent") {
        const TimingConfig cramped{30.0, 60.0, 0.05};
        const std::vector<DetectorClick> clicks = {{0, 3}, {1, 3}};
        const DeadTimeResult result = dead_time_sim(clicks, cramped);
        CHECK(result.registered[0] == 1);
        CHECK(result.registered[1] == 1);
        CHECK(result.lost == 0);
        CHECK(result.total_registered() == 2);
    }

    SUBCASE("exhaustive patterns at the apparatus timing lose nothing") {
        for (unsigned pattern = 0; pattern < 256; ++pattern) {
            std::vector<DetectorClick> clicks;
            for (int bin = 0; bin < 8; ++bin) {
                if (pattern >> bin & 1u) clicks.push_back(DetectorClick{0, bin});
            }
            const DeadTimeResult result = dead_time_sim(clicks, apparatus);
            CHECK(result.lost == 0);
            CHECK(result.registered[0] == static_cast<int>(clicks.size()));
        }
    }

    SUBCASE("cramped spacing loses exactly the adjacent clicks") {
        const TimingConfig cramped{30.0, 60.0, 0.05};
        for (unsigned pattern = 0; pattern < 256; ++pattern) {
            std::vector<DetectorClick> clicks;
            bool has_adjacent = false;
            for (int bin = 0; bin < 8; ++bin) {
                if (pattern >> bin & 1u) {
                    clicks.push_back(DetectorClick{0, bin});
                    if (bin > 0 && (pattern >> (bin - 1) & 1u)) has_adjacent = true;
                }
            }
            const DeadTimeResult result = dead_time_sim(clicks, cramped);
            CHECK((result.lost > 0) == has_adjacent);
        }
    }

    SUBCASE("invalid inputs are rejected") {
        const std::vector<DetectorClick> bad_det = {{2, 0}};
        const std::vector<DetectorClick> bad_bin = {{0, 8}};
        const std::vector<DetectorClick> ok = {{0, 0}};
        CHECK_THROWS_AS(dead_time_sim(bad_det, apparatus), std::invalid_argument);
        CHECK_THROWS_AS(dead_time_sim(bad_bin, apparatus), std::invalid_argument);
        CHECK_THROWS_AS(dead_time_sim(ok, TimingConfig{0.0, 60.0, 0.05}), std::invalid_argument);
        CHECK_THROWS_AS(dead_time_sim(ok, TimingConfig{110.0, -60.0, 0.05}),
                        std::invalid_argument);
    }
}

TEST_CASE("mismatched parameter variants are rejected") {
    McConfig config;
    config.shots = 10;
    config.seed = 1;
    config.params = CoherentMcParams{};
    CHECK_THROWS_AS(sample_fock_clicks(config), std::invalid_argument);
    config.params = FockMcParams{};
    CHECK_THROWS_AS(sample_coherent_clicks(config), std::invalid_argument);
    config.params = FockMcParams{2, 0.97, 0.43};
    config.shots = 0;
    CHECK_THROWS_AS(sample_fock_clicks(config), std::invalid_argument);
}

}  // TEST_SUITE
