#ifndef TMD_CLICK_HISTOGRAM_HPP
#define TMD_CLICK_HISTOGRAM_HPP

#include <array>
#include <cstdint>

namespace tmd {

// Observed or simulated event counts per number of clicks m = 0..16.
struct ClickHistogram {
    static constexpr int kBins = 17;

    std::array<std::int64_t, kBins> counts{};

    std::int64_t total() const {
        std::int64_t sum = 0;
        for (std::int64_t c : counts) sum += c;
        return sum;
    }
};

}  // namespace tmd

#endif
