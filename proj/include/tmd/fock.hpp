#ifndef TMD_FOCK_HPP
#define TMD_FOCK_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>

namespace tmd {

// Hard cap on modes in play: 16 detection modes plus 7 loss modes.
inline constexpr int kMaxModes = 23;

// Occupation tuple over a fixed number of modes. Fixed-capacity storage keeps
// the hash-map keys inline (no per-term heap allocation on the hot path).
class ModeOccupation {
public:
    ModeOccupation() = default;
    explicit ModeOccupation(int mode_count);

    int mode_count() const { return mode_count_; }
    int occupation(int mode) const { return occ_[static_cast<std::size_t>(mode)]; }
    void set_occupation(int mode, int photons);
    int total_photons() const;

    bool operator==(const ModeOccupation& other) const = default;

private:
    friend struct ModeOccupationHash;
    std::array<std::uint8_t, kMaxModes> occ_{};
    std::uint8_t mode_count_ = 0;
};

struct ModeOccupationHash {
    std::size_t operator()(const ModeOccupation& occ) const noexcept {
        // FNV-1a over the padded tuple; trailing modes are always zero
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (std::uint8_t byte : occ.occ_) {
            h = (h ^ byte) * 0x100000001B3ULL;
        }
        return static_cast<std::size_t>((h ^ occ.mode_count_) * 0x100000001B3ULL);
    }
};

// Two-mode splitting transform: a creation operator on in_mode maps to
// sqrt(t) * out_a + sqrt(1-t) * out_b. A coupler uses t = 1/2; a loss tap
// keeps the photon in place (out_a == in_mode) and diverts into a loss mode.
struct SplitSpec {
    int in_mode = 0;
    int out_a = 0;
    int out_b = 0;
    double transmission = 0.5;
};

// Sparse multimode number state: amplitudes keyed by occupation tuple.
//
// Amplitudes are real and non-negative throughout. The device this models has
// path-length differences orders of magnitude beyond the coherence length, so
// no relative phase between terms can ever reach an output probability; the
// usual beam-splitter phase convention is dropped. States are immutable once
// returned and safe to share between threads.
class FockState {
public:
    using TermMap = std::unordered_map<ModeOccupation, double, ModeOccupationHash>;

    int mode_count() const { return mode_count_; }
    int photon_number() const { return photon_number_; }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // 0 when the occupation tuple is not present
    double amplitude(const ModeOccupation& occ) const;
    double norm_squared() const;

private:
    FockState(int mode_count, int photon_number)
        : mode_count_(mode_count), photon_number_(photon_number) {}

    friend FockState make_number_state(int photons, int mode_count, int mode);
    friend FockState apply_split(const FockState& state, const SplitSpec& spec);

    int mode_count_ = 0;
    int photon_number_ = 0;
    TermMap terms_;
};

// n photons in a single mode, amplitude 1.
FockState make_number_state(int photons, int mode_count, int mode);

// Applies the splitting transform to every term. A term with q photons in
// in_mode expands into q+1 terms with amplitudes scaled by
// sqrt(C(q,k) t^k (1-t)^(q-k)). Output modes must be empty beforehand
// (out_a == in_mode excepted); photon number and norm are preserved.
FockState apply_split(const FockState& state, const SplitSpec& spec);

// Loss tap: split that keeps the transmitted fraction in place and routes the
// rest into a dedicated loss mode.
FockState apply_loss(const FockState& state, int mode, int loss_mode, double transmission);

using ProbabilityMap = std::unordered_map<ModeOccupation, double, ModeOccupationHash>;

// Born-rule probabilities marginalized onto a subset of modes: |amplitude|^2
// summed over the occupations of every mode outside the subset. Keys are
// occupation tuples of length modes.size(), in the order given.
ProbabilityMap mode_marginal_probabilities(const FockState& state, std::span<const int> modes);

}  // namespace tmd

#endif
