#ifndef TMD_NUMERIC_HPP
#define TMD_NUMERIC_HPP

#include <cstdint>
#include <stdexcept>

namespace tmd {

// Binomial coefficient C(n, k) as a double. Exact for every value that fits
// in the 53-bit mantissa, which covers everything at this scale (n <= 23).
inline double binomial_coefficient(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial_coefficient: negative argument");
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<double>(n - k + i);
        result /= static_cast<double>(i);
    }
    return result;
}

// Compensated (Kahan) accumulator. The alternating sums in the closed-form
// occupancy distribution cancel heavily for large m, n; compensation keeps
// the error near machine epsilon at this scale.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace tmd

#endif
