#include "tmd/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmd {

ClickDistribution::ClickDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("click distribution may not be empty");
}

double ClickDistribution::sum() const {
    double total = 0.0;
    for (double p : probs_) total += p;
    return total;
}

double ClickDistribution::mean() const {
    double total = 0.0;
    for (std::size_t m = 0; m < probs_.size(); ++m) total += static_cast<double>(m) * probs_[m];
    return total;
}

std::vector<double> poisson_binomial(std::span<const double> click_probs) {
    for (double p : click_probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("click probabilities must lie in [0, 1]");
        }
    }
    std::vector<double> dist(click_probs.size() + 1, 0.0);
    dist[0] = 1.0;
    std::size_t upper = 0;
    for (double p : click_probs) {
        ++upper;
        for (std::size_t m = upper; m > 0; --m) {
            dist[m] = dist[m] * (1.0 - p) + dist[m - 1] * p;
        }
        dist[0] *= 1.0 - p;
    }
    return dist;
}

ClickDistribution click_distribution_from_state(const FockState& state, const TmdLayout& layout,
                                                const DetectorModel& detector) {
    if (state.mode_count() != TmdLayout::kTotalModes) {
        throw std::invalid_argument("state mode count does not match the layout");
    }
    if (!(detector.eta >= 0.0 && detector.eta <= 1.0)) {
        throw std::invalid_argument("detector efficiency must lie in [0, 1]");
    }

    ProbabilityMap marginal = mode_marginal_probabilities(state, layout.detection_modes());

    std::vector<std::pair<ModeOccupation, double>> patterns(marginal.begin(), marginal.end());
    std::sort(patterns.begin(), patterns.end(), [](const auto& a, const auto& b) {
        for (int m = 0; m < a.first.mode_count(); ++m) {
            if (a.first.occupation(m) != b.first.occupation(m)) {
                return a.first.occupation(m) < b.first.occupation(m);
            }
        }
        return false;
    });

    const int bins = TmdLayout::kDetectionModeCount;
    std::vector<double> result(static_cast<std::size_t>(bins) + 1, 0.0);
    std::vector<double> bin_probs;
    bin_probs.reserve(static_cast<std::size_t>(bins));
    for (const auto& [pattern, prob] : patterns) {
        bin_probs.clear();
        for (int bin = 0; bin < bins; ++bin) {
            const int q = pattern.occupation(bin);
            if (q > 0) {
                bin_probs.push_back(1.0 - std::pow(1.0 - detector.eta, q));
            }
        }
        // empty bins never click; the count distribution only involves the
        // occupied ones
        const std::vector<double> counts = poisson_binomial(bin_probs);
        for (std::size_t m = 0; m < counts.size(); ++m) {
            result[m] += prob * counts[m];
        }
    }
    return ClickDistribution(std::move(result));
}

double p_correct(int photon_number, double f, const DetectorModel& detector) {
    if (photon_number < 0) throw std::invalid_argument("photon number must be non-negative");
    if (photon_number > TmdLayout::kDetectionModeCount) return 0.0;

    const TmdLayout layout = build_layout();
    const FockState state = propagate(NetworkConfig{f, photon_number});
    return click_distribution_from_state(state, layout, detector)[photon_number];
}

}  // namespace tmd
