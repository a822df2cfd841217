#include "tmd/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tmd/numeric.hpp"

namespace tmd {

namespace {

void check_mode_index(int mode, int mode_count, const char* what) {
    if (mode < 0 || mode >= mode_count) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(mode) +
                                " outside [0, " + std::to_string(mode_count) + ")");
    }
}

}  // namespace

ModeOccupation::ModeOccupation(int mode_count) {
    if (mode_count < 1 || mode_count > kMaxModes) {
        throw std::invalid_argument("mode count must be in [1, " + std::to_string(kMaxModes) + "]");
    }
    mode_count_ = static_cast<std::uint8_t>(mode_count);
}

void ModeOccupation::set_occupation(int mode, int photons) {
    check_mode_index(mode, mode_count_, "mode");
    if (photons < 0 || photons > 255) {
        throw std::invalid_argument("occupation must be in [0, 255]");
    }
    occ_[static_cast<std::size_t>(mode)] = static_cast<std::uint8_t>(photons);
}

int ModeOccupation::total_photons() const {
    int total = 0;
    for (int m = 0; m < mode_count_; ++m) total += occ_[static_cast<std::size_t>(m)];
    return total;
}

double FockState::amplitude(const ModeOccupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? 0.0 : it->second;
}

double FockState::norm_squared() const {
    double total = 0.0;
    for (const auto& [occ, amp] : terms_) total += amp * amp;
    return total;
}

FockState make_number_state(int photons, int mode_count, int mode) {
    if (photons < 0 || photons > 255) {
        throw std::invalid_argument("photon number must be in [0, 255]");
    }
    ModeOccupation occ(mode_count);  // validates mode_count
    check_mode_index(mode, mode_count, "mode");
    occ.set_occupation(mode, photons);

    FockState state(mode_count, photons);
    state.terms_.emplace(occ, 1.0);
    return state;
}

FockState apply_split(const FockState& state, const SplitSpec& spec) {
    const int modes = state.mode_count();
    check_mode_index(spec.in_mode, modes, "in_mode");
    check_mode_index(spec.out_a, modes, "out_a");
    check_mode_index(spec.out_b, modes, "out_b");
    if (spec.out_a == spec.out_b) {
        throw std::invalid_argument("split output modes must differ");
    }
    if (spec.out_b == spec.in_mode) {
        throw std::invalid_argument("out_b may not equal in_mode; only out_a may stay in place");
    }
    if (!(spec.transmission >= 0.0 && spec.transmission <= 1.0)) {
        throw std::invalid_argument("transmission must lie in [0, 1]");
    }

    const bool in_place = spec.out_a == spec.in_mode;
    for (const auto& [occ, amp] : state.terms()) {
        if ((!in_place && occ.occupation(spec.out_a) != 0) || occ.occupation(spec.out_b) != 0) {
            throw std::invalid_argument("split output mode already occupied");
        }
        (void)amp;
    }

    const double t = spec.transmission;
    FockState result(modes, state.photon_number());
    result.terms_.reserve(state.term_count() * 2);

    for (const auto& [occ, amp] : state.terms()) {
        const int q = occ.occupation(spec.in_mode);
        if (q == 0) {
            result.terms_[occ] += amp;
            continue;
        }
        ModeOccupation base = occ;
        base.set_occupation(spec.in_mode, 0);
        // (sqrt(t) a_out1 + sqrt(1-t) a_out2)^q expanded with bosonic
        // normalization: amplitude factor sqrt(C(q,k) t^k (1-t)^(q-k))
        for (int kept = 0; kept <= q; ++kept) {
            const double weight =
                binomial_coefficient(q, kept) * std::pow(t, kept) * std::pow(1.0 - t, q - kept);
            if (weight == 0.0) continue;
            ModeOccupation next = base;
            next.set_occupation(spec.out_a, kept);
            next.set_occupation(spec.out_b, q - kept);
            result.terms_[next] += amp * std::sqrt(weight);
        }
    }
    return result;
}

FockState apply_loss(const FockState& state, int mode, int loss_mode, double transmission) {
    return apply_split(state, SplitSpec{mode, mode, loss_mode, transmission});
}

ProbabilityMap mode_marginal_probabilities(const FockState& state, std::span<const int> modes) {
    if (modes.empty() || modes.size() > static_cast<std::size_t>(state.mode_count())) {
        throw std::invalid_argument("marginal mode subset size out of range");
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        check_mode_index(modes[i], state.mode_count(), "marginal mode");
        for (std::size_t j = i + 1; j < modes.size(); ++j) {
            if (modes[i] == modes[j]) throw std::invalid_argument("marginal modes must be distinct");
        }
    }

    ProbabilityMap marginal;
    marginal.reserve(state.term_count());
    for (const auto& [occ, amp] : state.terms()) {
        ModeOccupation restricted(static_cast<int>(modes.size()));
        for (std::size_t i = 0; i < modes.size(); ++i) {
            restricted.set_occupation(static_cast<int>(i), occ.occupation(modes[i]));
        }
        marginal[restricted] += amp * amp;
    }
    return marginal;
}

}  // namespace tmd
