#include "tmd/coherent.hpp"

#include <cmath>
#include <stdexcept>

#include "tmd/numeric.hpp"

namespace tmd {

namespace {

void check_coherent(const CoherentParams& p) {
    if (p.mu0 < 0.0) throw std::invalid_argument("mean photon number must be non-negative");
    if (!(p.l >= 0.0 && p.l <= 1.0)) throw std::invalid_argument("transmission must lie in [0, 1]");
    if (!(p.eta >= 0.0 && p.eta <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    if (p.bins < 1) throw std::invalid_argument("bin count must be positive");
}

}  // namespace

double poisson_pmf(double mean, int count) {
    if (mean < 0.0) throw std::invalid_argument("mean must be non-negative");
    if (count < 0) throw std::invalid_argument("count must be non-negative");
    if (mean == 0.0) return count == 0 ? 1.0 : 0.0;
    return std::exp(count * std::log(mean) - mean - std::lgamma(count + 1.0));
}

double effective_mu(double eta, double l, double mu0, int bins) {
    check_coherent(CoherentParams{mu0, l, eta, bins});
    return eta * l * mu0 / static_cast<double>(bins);
}

CoherentParams CoherentParams::from_eta_l_mu0(double product, int bins) {
    if (product < 0.0) throw std::invalid_argument("eta*l*mu0 must be non-negative");
    return CoherentParams{product, 1.0, 1.0, bins};
}

double CoherentParams::effective_mean() const { return effective_mu(eta, l, mu0, bins); }

CoherentClickModel CoherentClickModel::from_mu_prime(double mu_prime) {
    if (mu_prime < 0.0) throw std::invalid_argument("mu' must be non-negative");
    const double p0 = std::exp(-mu_prime);
    return CoherentClickModel{p0, 1.0 - p0};
}

double click_pmf(const CoherentParams& params, int clicks) {
    check_coherent(params);
    if (clicks < 0 || clicks > params.bins) {
        throw std::invalid_argument("click count must lie in [0, bins]");
    }
    const CoherentClickModel model = CoherentClickModel::from_mu_prime(params.effective_mean());
    return binomial_coefficient(params.bins, clicks) *
           std::pow(model.p0, params.bins - clicks) * std::pow(model.pA, clicks);
}

std::vector<double> click_distribution(const CoherentParams& params) {
    check_coherent(params);
    std::vector<double> dist(static_cast<std::size_t>(params.bins) + 1);
    for (int m = 0; m <= params.bins; ++m) {
        dist[static_cast<std::size_t>(m)] = click_pmf(params, m);
    }
    return dist;
}

}  // namespace tmd
