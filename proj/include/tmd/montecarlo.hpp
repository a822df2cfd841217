#ifndef TMD_MONTECARLO_HPP
#define TMD_MONTECARLO_HPP

#include <array>
#include <cstdint>
#include <span>
#include <variant>

#include "tmd/click_histogram.hpp"

namespace tmd {

struct FockMcParams {
    int photon_number = 0;
    double f = 0.97;
    double eta = 0.43;
};

// Loss handling for the coherent sampler: the equal-loss mode thins every
// photon by the single average transmission l and routes uniformly (the
// approximation behind the analytic click model); the per-bin mode routes
// with the true f^b weights.
enum class CoherentLossMode { Equal, PerBin };

struct CoherentMcParams {
    double mu0 = 0.0;
    double eta = 0.43;
    CoherentLossMode loss = CoherentLossMode::Equal;
    double l = 0.55;   // equal-loss average transmission
    double f = 0.97;   // per-bin fiber transmission
};

struct McConfig {
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
    std::variant<FockMcParams, CoherentMcParams> params;
};

struct McResult {
    ClickHistogram histogram;
    std::array<double, ClickHistogram::kBins> empirical_probs{};
    std::uint64_t seed_used = 0;
};

// Per-photon trajectory sampling: each photon independently reaches bin b of
// either detector with probability f^b/16 (or is lost), then clicks with
// probability eta; a shot's outcome is the number of distinct clicked bins.
// Shots run in fixed-size batches on independent RNG substreams, so results
// are identical for any thread count. Requires Fock params.
McResult sample_fock_clicks(const McConfig& config);

// Same routing with the photon number drawn from Poisson(mu0) per shot.
// Requires coherent params.
McResult sample_coherent_clicks(const McConfig& config);

struct TimingConfig {
    double delta_t_ns = 110.0;       // delay between adjacent time bins
    double tau_ns = 60.0;            // detector dead time
    double pulse_duration_ns = 0.05; // pulse length; negligible next to delta_t
};

struct DetectorClick {
    int detector;  // 0 = A, 1 = B
    int time_bin;  // 0..7
};

struct DeadTimeResult {
    std::array<int, 2> registered{};
    int lost = 0;

    int total_registered() const { return registered[0] + registered[1]; }
};

// Replays a click pattern against the dead-time window: a click at time
// bin * delta_t registers only if its detector has been live for at least tau
// since its previous registered click. Detectors are independent.
DeadTimeResult dead_time_sim(std::span<const DetectorClick> clicks, const TimingConfig& timing);

}  // namespace tmd

#endif
