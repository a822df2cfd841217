#ifndef TMD_DETECTION_HPP
#define TMD_DETECTION_HPP

#include <span>
#include <vector>

#include "tmd/fock.hpp"
#include "tmd/network.hpp"

namespace tmd {

// Binary click detector: with q photons incident, the probability of no click
// is (1-eta)^q. A single effective eta covers both detectors; coupling and
// connector excess losses are folded into it. No dark counts, no afterpulsing,
// no multi-photon correlations.
struct DetectorModel {
    double eta = 0.43;
};

// Probability vector over the number of detection events m = 0..16.
class ClickDistribution {
public:
    explicit ClickDistribution(std::vector<double> probs);

    int max_clicks() const { return static_cast<int>(probs_.size()) - 1; }
    double operator[](int m) const { return probs_[static_cast<std::size_t>(m)]; }
    const std::vector<double>& probs() const { return probs_; }

    double sum() const;
    double mean() const;

private:
    std::vector<double> probs_;
};

// Exact distribution of the number of successes among independent Bernoulli
// trials with the given per-trial probabilities, by iterative convolution.
// O(trials^2), exact in double precision at this scale.
std::vector<double> poisson_binomial(std::span<const double> click_probs);

// Click statistics of a propagated state: for each basis term, every
// detection bin with q photons clicks independently with probability
// 1-(1-eta)^q; the per-term count distribution is the Poisson-binomial over
// the 16 bins, and the result is the |amplitude|^2-weighted mixture. Loss
// modes are marginalized out. Accumulation runs in sorted term order so the
// result is bit-reproducible.
ClickDistribution click_distribution_from_state(const FockState& state, const TmdLayout& layout,
                                                const DetectorModel& detector);

// P(n|n) through the full pipeline: propagate n photons at fiber transmission
// f, then read off the probability that all n produce distinct clicks.
// Returns 0 for n > 16 (more photons than time bins cannot all be resolved).
double p_correct(int photon_number, double f, const DetectorModel& detector);

}  // namespace tmd

#endif
