#include "tmd/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tmd/network.hpp"
#include "tmd/rng.hpp"

namespace tmd {

namespace {

constexpr std::int64_t kBatchShots = 1 << 16;
constexpr int kBins = TmdLayout::kDetectionModeCount;

// cumulative per-photon arrival probabilities over the 16 detection bins;
// anything beyond the last entry is loss
std::vector<double> arrival_cumulative(double f) {
    std::vector<double> cumulative(kBins);
    double running = 0.0;
    for (int mode = 0; mode < kBins; ++mode) {
        running += std::pow(f, static_cast<double>(mode % TmdLayout::kTimeBins)) / kBins;
        cumulative[static_cast<std::size_t>(mode)] = running;
    }
    return cumulative;
}

int sample_arrival(Xoshiro256StarStar& rng, std::span<const double> cumulative) {
    const double u = rng.next_double();
    for (int mode = 0; mode < kBins; ++mode) {
        if (u < cumulative[static_cast<std::size_t>(mode)]) return mode;
    }
    return -1;  // lost
}

template <typename ShotFn>
ClickHistogram run_batches(std::int64_t shots, std::uint64_t seed, const ShotFn& shot_fn) {
    if (shots < 1) throw std::invalid_argument("shot count must be at least 1");

    const std::int64_t batches = (shots + kBatchShots - 1) / kBatchShots;
    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const std::int64_t workers = std::min<std::int64_t>(hardware, batches);

    // batch b always draws from substream b regardless of the worker grid, so
    // the histogram is invariant under the thread count
    auto run_worker = [&](std::int64_t worker) {
        ClickHistogram local;
        for (std::int64_t batch = worker; batch < batches; batch += workers) {
            Xoshiro256StarStar rng = Xoshiro256StarStar::substream(seed, batch);
            const std::int64_t begin = batch * kBatchShots;
            const std::int64_t end = std::min(shots, begin + kBatchShots);
            for (std::int64_t s = begin; s < end; ++s) {
                const int clicks = shot_fn(rng);
                ++local.counts[static_cast<std::size_t>(clicks)];
            }
        }
        return local;
    };

    std::vector<std::future<ClickHistogram>> futures;
    for (std::int64_t w = 1; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, run_worker, w));
    }
    ClickHistogram total = run_worker(0);
    for (auto& future : futures) {
        const ClickHistogram part = future.get();
        for (int m = 0; m < ClickHistogram::kBins; ++m) {
            total.counts[static_cast<std::size_t>(m)] += part.counts[static_cast<std::size_t>(m)];
        }
    }
    return total;
}

McResult finish(ClickHistogram histogram, std::int64_t shots, std::uint64_t seed) {
    McResult result;
    result.histogram = histogram;
    result.seed_used = seed;
    for (int m = 0; m < ClickHistogram::kBins; ++m) {
        result.empirical_probs[static_cast<std::size_t>(m)] =
            static_cast<double>(histogram.counts[static_cast<std::size_t>(m)]) /
            static_cast<double>(shots);
    }
    return result;
}

void check_unit_interval(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

McResult sample_fock_clicks(const McConfig& config) {
    if (!std::holds_alternative<FockMcParams>(config.params)) {
        throw std::invalid_argument("sample_fock_clicks requires Fock parameters");
    }
    const FockMcParams params = std::get<FockMcParams>(config.params);
    if (params.photon_number < 0) {
        throw std::invalid_argument("photon number must be non-negative");
    }
    check_unit_interval(params.f, "f");
    check_unit_interval(params.eta, "eta");

    const std::vector<double> cumulative = arrival_cumulative(params.f);
    auto shot = [&](Xoshiro256StarStar& rng) {
        std::uint32_t clicked = 0;
        for (int photon = 0; photon < params.photon_number; ++photon) {
            const int mode = sample_arrival(rng, cumulative);
            if (mode >= 0 && rng.bernoulli(params.eta)) {
                clicked |= 1u << mode;
            }
        }
        return std::popcount(clicked);
    };
    return finish(run_batches(config.shots, config.seed, shot), config.shots, config.seed);
}

McResult sample_coherent_clicks(const McConfig& config) {
    if (!std::holds_alternative<CoherentMcParams>(config.params)) {
        throw std::invalid_argument("sample_coherent_clicks requires coherent parameters");
    }
    const CoherentMcParams params = std::get<CoherentMcParams>(config.params);
    if (params.mu0 < 0.0) throw std::invalid_argument("mu0 must be non-negative");
    check_unit_interval(params.eta, "eta");
    check_unit_interval(params.l, "l");
    check_unit_interval(params.f, "f");

    const bool per_bin = params.loss == CoherentLossMode::PerBin;
    const std::vector<double> cumulative = arrival_cumulative(per_bin ? params.f : 1.0);
    // in equal-loss mode every photon is thinned by l before uniform routing
    auto shot = [&](Xoshiro256StarStar& rng) {
        std::uint32_t clicked = 0;
        const int photons = rng.next_poisson(params.mu0);
        for (int photon = 0; photon < photons; ++photon) {
            if (!per_bin && !rng.bernoulli(params.l)) continue;
            const int mode = sample_arrival(rng, cumulative);
            if (mode >= 0 && rng.bernoulli(params.eta)) {
                clicked |= 1u << mode;
            }
        }
        return std::popcount(clicked);
    };
    return finish(run_batches(config.shots, config.seed, shot), config.shots, config.seed);
}

DeadTimeResult dead_time_sim(std::span<const DetectorClick> clicks, const TimingConfig& timing) {
    if (!(timing.delta_t_ns > 0.0) || !(timing.tau_ns > 0.0) || !(timing.pulse_duration_ns > 0.0)) {
        throw std::invalid_argument("timing parameters must be positive");
    }

    std::array<std::vector<int>, 2> bins_by_detector;
    for (const DetectorClick& click : clicks) {
        if (click.detector < 0 || click.detector > 1) {
            throw std::invalid_argument("detector index must be 0 or 1");
        }
        if (click.time_bin < 0 || click.time_bin >= TmdLayout::kTimeBins) {
            throw std::invalid_argument("time bin outside [0, 8)");
        }
        bins_by_detector[static_cast<std::size_t>(click.detector)].push_back(click.time_bin);
    }

    DeadTimeResult result;
    for (int det = 0; det < 2; ++det) {
        auto& bins = bins_by_detector[static_cast<std::size_t>(det)];
        std::sort(bins.begin(), bins.end());
        double live_at = -std::numeric_limits<double>::infinity();
        for (int bin : bins) {
            const double time = bin * timing.delta_t_ns;
            if (time >= live_at) {
                ++result.registered[static_cast<std::size_t>(det)];
                live_at = time + timing.tau_ns;
            } else {
                ++result.lost;
            }
        }
    }
    return result;
}

}  // namespace tmd
