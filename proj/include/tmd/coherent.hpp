#ifndef TMD_COHERENT_HPP
#define TMD_COHERENT_HPP

#include <vector>

namespace tmd {

// Analytic click statistics for a coherent input pulse. Splitting a coherent
// state leaves every output coherent, so each of the N detection bins sees an
// independent Poisson photon number with effective mean
//     mu' = eta * l * mu0 / N
// where l is the average system transmission. All bins share the same mu'
// (the equal-loss approximation); the Monte Carlo module carries the per-bin
// refinement so the approximation error can be quantified.

// mu^n e^(-mu) / n!
double poisson_pmf(double mean, int count);

double effective_mu(double eta, double l, double mu0, int bins);

struct CoherentParams {
    double mu0 = 0.0;  // mean photon number at the input
    double l = 1.0;    // average system transmission
    double eta = 1.0;  // detector efficiency
    int bins = 16;

    // the three factors only ever enter through their product, so a fit value
    // eta*l*mu0 maps onto (product, 1, 1)
    static CoherentParams from_eta_l_mu0(double product, int bins = 16);

    double effective_mean() const;  // mu'
};

// Per-bin no-click / click probabilities: P0 = exp(-mu'), PA = 1 - P0.
struct CoherentClickModel {
    double p0 = 1.0;
    double pA = 0.0;

    static CoherentClickModel from_mu_prime(double mu_prime);
};

// P(m) = C(N,m) * P0^(N-m) * (1-P0)^m, the binomial over N identical bins.
double click_pmf(const CoherentParams& params, int clicks);

// full distribution m = 0..N
std::vector<double> click_distribution(const CoherentParams& params);

}  // namespace tmd

#endif
