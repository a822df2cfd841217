#include "tmd/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tmd/coherent.hpp"

namespace tmd {

namespace {

constexpr double kMuLow = 1e-4;
constexpr double kMuHigh = 10.0;
constexpr int kGridPoints = 160;
constexpr double kRefineRelTol = 1e-8;

struct Profile {
    double normalization;
    double rss;
};

// optimal A for fixed mu', and the residual sum of squares there
Profile profile_at(const ClickHistogram& hist, double mu_prime) {
    const CoherentParams params = CoherentParams::from_eta_l_mu0(16.0 * mu_prime);
    const std::vector<double> pmf = click_distribution(params);

    double cp = 0.0;
    double pp = 0.0;
    for (int m = 0; m < ClickHistogram::kBins; ++m) {
        const double c = static_cast<double>(hist.counts[static_cast<std::size_t>(m)]);
        const double p = pmf[static_cast<std::size_t>(m)];
        cp += c * p;
        pp += p * p;
    }
    const double a = pp > 0.0 ? cp / pp : 0.0;

    double rss = 0.0;
    for (int m = 0; m < ClickHistogram::kBins; ++m) {
        const double c = static_cast<double>(hist.counts[static_cast<std::size_t>(m)]);
        const double r = c - a * pmf[static_cast<std::size_t>(m)];
        rss += r * r;
    }
    return Profile{a, rss};
}

}  // namespace

FitResult fit_histogram(const ClickHistogram& hist) {
    if (hist.total() <= 0) {
        throw UnidentifiableFitError("histogram holds no events");
    }
    int occupied = 0;
    for (std::int64_t c : hist.counts) {
        if (c < 0) throw std::invalid_argument("histogram counts must be non-negative");
        if (c > 0) ++occupied;
    }
    if (occupied < 2) {
        throw UnidentifiableFitError(
            "all events share one click count; mu' is unidentifiable");
    }

    int evaluations = 0;
    double best_mu = kMuLow;
    double best_rss = std::numeric_limits<double>::infinity();
    auto evaluate = [&](double mu) {
        ++evaluations;
        const double rss = profile_at(hist, mu).rss;
        if (rss < best_rss) {
            best_rss = rss;
            best_mu = mu;
        }
        return rss;
    };

    // coarse logarithmic grid
    const double log_low = std::log(kMuLow);
    const double log_high = std::log(kMuHigh);
    const auto grid_mu = [&](int i) {
        return std::exp(log_low + (log_high - log_low) * i / static_cast<double>(kGridPoints - 1));
    };
    int best_index = 0;
    double best_grid_rss = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double rss = evaluate(grid_mu(i));
        if (rss < best_grid_rss) {
            best_grid_rss = rss;
            best_index = i;
        }
    }
    const bool at_bound = best_index == 0 || best_index == kGridPoints - 1;

    // golden-section refinement inside the bracketing grid cells
    double lo = grid_mu(std::max(0, best_index - 1));
    double hi = grid_mu(std::min(kGridPoints - 1, best_index + 1));
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = evaluate(x1);
    double f2 = evaluate(x2);
    while (hi - lo > kRefineRelTol * std::max(std::abs(lo), std::abs(hi))) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = evaluate(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = evaluate(x2);
        }
    }

    const Profile best = profile_at(hist, best_mu);
    FitResult result;
    result.normalization = best.normalization;
    result.mu_prime = best_mu;
    result.eta_l_mu0 = 16.0 * best_mu;
    result.rss = best.rss;
    result.iterations = evaluations;
    result.boundary_warning = at_bound;
    return result;
}

}  // namespace tmd
