#ifndef TMD_CLASSICAL_HPP
#define TMD_CLASSICAL_HPP

#include <vector>

namespace tmd {

// Classical occupancy model of a balanced lossless N-port with efficiency-eta
// detectors: each photon independently lands in one of N bins (probability
// 1/N each) and is detected with probability eta; a count is the number of
// bins holding at least one detected photon. Path delays in the device exceed
// the coherence length by orders of magnitude, so these classical statistics
// coincide with the field-operator result; the cross-check is asserted by
// test rather than assumed.

// P(0|n) = (1-eta)^n: every photon escapes detection independently.
double p_zero(int photons, double eta);

// P(n|n) = (eta/N)^n * N!/(N-n)!: all photons detected in distinct bins.
// Returns 0 for n > N.
double p_all(int bins, int photons, double eta);

// Full distribution by the recursion
//   P(m|n+1) = P(m|n)   * [(1-eta) + eta*m/N]
//            + P(m-1|n) * [(N+1-m) * eta/N]
// with base P(0|0) = 1. Memoized row-by-row per (N, eta); this is the
// reference path when the alternating closed form loses precision.
class OccupancyRecursion {
public:
    OccupancyRecursion(int bins, double eta);

    double probability(int detected, int photons);
    // full row P(.|n), length n+1 (entries beyond N are exactly zero)
    const std::vector<double>& distribution(int photons);

private:
    int bins_;
    double eta_;
    std::vector<std::vector<double>> rows_;
};

double recursion_pmn(int bins, double eta, int detected, int photons);

// Closed-form solution of the recursion:
//   P(m|n) = C(N,m) * sum_{j=0}^{m} (-1)^j C(m,j) [(1-eta) + (m-j) eta/N]^n
// computed with compensated summation.
double closed_form_pmn(int bins, double eta, int detected, int photons);

// Exact enumeration over every per-photon outcome: undetected, or detected in
// one of the N bins. (N+1)^n branches; refuses instances beyond the desk-scale
// bound. Independent of both the recursion and the closed form.
std::vector<double> brute_force_distribution(int bins, double eta, int photons);
double brute_force_pmn(int bins, double eta, int detected, int photons);

}  // namespace tmd

#endif
