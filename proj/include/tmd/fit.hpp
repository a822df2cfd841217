#ifndef TMD_FIT_HPP
#define TMD_FIT_HPP

#include <stdexcept>

#include "tmd/click_histogram.hpp"

namespace tmd {

// Raised when a histogram cannot pin down mu': no events at all, or every
// event at a single click count.
class UnidentifiableFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FitResult {
    double normalization = 0.0;  // events per unit probability
    double mu_prime = 0.0;       // fitted per-bin mean
    double eta_l_mu0 = 0.0;      // 16 * mu_prime
    double rss = 0.0;            // residual sum of squares at the optimum
    int iterations = 0;          // objective evaluations (grid + refinement)
    bool boundary_warning = false;  // optimum pinned at a search bound
};

// Least-squares fit of counts_m against A * P(m; mu') with the coherent-state
// click model, unweighted on raw counts. For fixed mu' the normalization A is
// linear least squares in closed form, so the search is one-dimensional:
// a coarse logarithmic grid over mu' in [1e-4, 10] followed by golden-section
// refinement to relative tolerance 1e-8.
FitResult fit_histogram(const ClickHistogram& histogram);

}  // namespace tmd

#endif
