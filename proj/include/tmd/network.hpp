#ifndef TMD_NETWORK_HPP
#define TMD_NETWORK_HPP

#include <array>
#include <map>
#include <span>

#include "tmd/fock.hpp"

namespace tmd {

enum class Detector { A, B };

// Mode bookkeeping for the 23-mode time-multiplexed detector:
//
//   modes  0..7   detector A, time bins 0..7
//   modes  8..15  detector B, time bins 0..7
//   modes 16..22  loss modes, ordered by delay stage then tapped bin
//                 (stage 1 taps one delayed pulse, stage 2 two, stage 3 four)
//
// Time bin b encodes in binary which delay loops the pulse traversed, so the
// total delay-fiber length for bin b is b units of L and the fiber power
// transmission seen by that bin is f^b.
class TmdLayout {
public:
    static constexpr int kTimeBins = 8;
    static constexpr int kDetectionModeCount = 16;
    static constexpr int kLossModeCount = 7;
    static constexpr int kTotalModes = 23;
    static constexpr int kDelayStages = 3;

    struct LossTap {
        int mode;             // absolute mode index, 16..22
        int stage;            // 1..3
        int tapped_bin;       // pulse index entering the tap (partial time bin)
        int fiber_lengths;    // exponent of f: 2^(stage-1)
    };

    int detection_mode(Detector det, int time_bin) const;
    int loop_exponent(int time_bin) const;

    std::span<const int> detection_modes() const { return detection_modes_; }
    std::span<const int> loss_modes() const { return loss_modes_; }
    std::span<const LossTap> loss_taps() const { return taps_; }

    Detector detector_of(int detection_mode) const;
    int time_bin_of(int detection_mode) const;

private:
    friend TmdLayout build_layout();
    TmdLayout();

    std::array<int, kDetectionModeCount> detection_modes_;
    std::array<int, kLossModeCount> loss_modes_;
    std::array<LossTap, kLossModeCount> taps_;
};

TmdLayout build_layout();

struct NetworkConfig {
    double f = 0.97;        // power transmission of one delay-fiber length L
    int photon_number = 0;  // Fock input n
};

// Propagates |n> through the full network: three delay stages, each a row of
// 50/50 couplers followed by loss taps of transmission f^(2^(stage-1)) on the
// delayed pulses, then the final coupler row that distributes every time bin
// over the two detectors.
FockState propagate(const NetworkConfig& config);

struct DetectorBin {
    Detector detector;
    int time_bin;
    auto operator<=>(const DetectorBin&) const = default;
};

// Single-photon probability of arriving (undetected losses included) at each
// detection bin: f^b / 16 for a bin with loop exponent b.
std::map<DetectorBin, double> per_bin_reach_probability(const TmdLayout& layout, double f);

}  // namespace tmd

#endif
