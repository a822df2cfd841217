#include "tmd/network.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tmd {

TmdLayout::TmdLayout() {
    std::iota(detection_modes_.begin(), detection_modes_.end(), 0);
    std::iota(loss_modes_.begin(), loss_modes_.end(), kDetectionModeCount);

    int next = kDetectionModeCount;
    int tap = 0;
    for (int stage = 1; stage <= kDelayStages; ++stage) {
        const int delayed = 1 << (stage - 1);  // pulses entering this stage's long arm
        for (int bin = delayed; bin < 2 * delayed; ++bin) {
            taps_[static_cast<std::size_t>(tap++)] = LossTap{next++, stage, bin, delayed};
        }
    }
}

int TmdLayout::detection_mode(Detector det, int time_bin) const {
    if (time_bin < 0 || time_bin >= kTimeBins) {
        throw std::out_of_range("time bin outside [0, 8)");
    }
    return (det == Detector::A ? 0 : kTimeBins) + time_bin;
}

int TmdLayout::loop_exponent(int time_bin) const {
    if (time_bin < 0 || time_bin >= kTimeBins) {
        throw std::out_of_range("time bin outside [0, 8)");
    }
    return time_bin;
}

Detector TmdLayout::detector_of(int detection_mode) const {
    if (detection_mode < 0 || detection_mode >= kDetectionModeCount) {
        throw std::out_of_range("not a detection mode");
    }
    return detection_mode < kTimeBins ? Detector::A : Detector::B;
}

int TmdLayout::time_bin_of(int detection_mode) const {
    if (detection_mode < 0 || detection_mode >= kDetectionModeCount) {
        throw std::out_of_range("not a detection mode");
    }
    return detection_mode % kTimeBins;
}

TmdLayout build_layout() { return TmdLayout(); }

FockState propagate(const NetworkConfig& config) {
    if (!(config.f >= 0.0 && config.f <= 1.0)) {
        throw std::invalid_argument("fiber transmission f must lie in [0, 1]");
    }
    if (config.photon_number < 0) {
        throw std::invalid_argument("photon number must be non-negative");
    }

    FockState state = make_number_state(config.photon_number, TmdLayout::kTotalModes, 0);

    // Pulses live in modes 0..2^stage-1; each stage splits pulse p into the
    // short arm (stays at p) and the long arm (mode p + 2^stage), then the
    // long arm pays its fiber loss into a fresh loss mode.
    int next_loss = TmdLayout::kDetectionModeCount;
    for (int stage = 0; stage < TmdLayout::kDelayStages; ++stage) {
        const int pulses = 1 << stage;
        for (int p = 0; p < pulses; ++p) {
            state = apply_split(state, SplitSpec{p, p, p + pulses, 0.5});
        }
        const double transmission = std::pow(config.f, static_cast<double>(pulses));
        for (int p = pulses; p < 2 * pulses; ++p) {
            state = apply_loss(state, p, next_loss++, transmission);
        }
    }

    // final coupler row: time bin p goes to detector A (mode p) or B (mode p+8)
    for (int p = 0; p < TmdLayout::kTimeBins; ++p) {
        state = apply_split(state, SplitSpec{p, p, p + TmdLayout::kTimeBins, 0.5});
    }

    return state;
}

std::map<DetectorBin, double> per_bin_reach_probability(const TmdLayout& layout, double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::invalid_argument("fiber transmission f must lie in [0, 1]");
    }
    std::map<DetectorBin, double> reach;
    for (Detector det : {Detector::A, Detector::B}) {
        for (int bin = 0; bin < TmdLayout::kTimeBins; ++bin) {
            const double p = std::pow(f, static_cast<double>(layout.loop_exponent(bin))) /
                             static_cast<double>(TmdLayout::kDetectionModeCount);
            reach[DetectorBin{det, bin}] = p;
        }
    }
    return reach;
}

}  // namespace tmd
