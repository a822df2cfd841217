#include "tmd/classical.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "tmd/numeric.hpp"

namespace tmd {

namespace {

void check_params(int bins, double eta, int photons) {
    if (bins < 1) throw std::invalid_argument("bin count must be positive");
    if (photons < 0) throw std::invalid_argument("photon number must be non-negative");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
}

}  // namespace

double p_zero(int photons, double eta) {
    check_params(1, eta, photons);
    return std::pow(1.0 - eta, photons);
}

double p_all(int bins, int photons, double eta) {
    check_params(bins, eta, photons);
    if (photons > bins) return 0.0;
    double result = 1.0;
    for (int k = 0; k < photons; ++k) {
        result *= eta * static_cast<double>(bins - k) / static_cast<double>(bins);
    }
    return result;
}

OccupancyRecursion::OccupancyRecursion(int bins, double eta) : bins_(bins), eta_(eta) {
    check_params(bins, eta, 0);
    rows_.push_back({1.0});  // P(0|0) = 1
}

const std::vector<double>& OccupancyRecursion::distribution(int photons) {
    if (photons < 0) throw std::invalid_argument("photon number must be non-negative");
    while (static_cast<int>(rows_.size()) <= photons) {
        const std::vector<double>& prev = rows_.back();
        const int n = static_cast<int>(rows_.size());  // building P(.|n)
        std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
        for (int m = 0; m <= n; ++m) {
            const double stay = (1.0 - eta_) + eta_ * static_cast<double>(m) / bins_;
            const double open = static_cast<double>(bins_ + 1 - m) * eta_ / bins_;
            double p = 0.0;
            if (m < n) p += prev[static_cast<std::size_t>(m)] * stay;
            if (m >= 1) p += prev[static_cast<std::size_t>(m) - 1] * open;
            row[static_cast<std::size_t>(m)] = p;
        }
        rows_.push_back(std::move(row));
    }
    return rows_[static_cast<std::size_t>(photons)];
}

double OccupancyRecursion::probability(int detected, int photons) {
    if (detected < 0) throw std::invalid_argument("detected count must be non-negative");
    const std::vector<double>& row = distribution(photons);
    if (detected > photons) return 0.0;
    return row[static_cast<std::size_t>(detected)];
}

double recursion_pmn(int bins, double eta, int detected, int photons) {
    OccupancyRecursion rec(bins, eta);
    return rec.probability(detected, photons);
}

double closed_form_pmn(int bins, double eta, int detected, int photons) {
    check_params(bins, eta, photons);
    if (detected < 0) throw std::invalid_argument("detected count must be non-negative");
    if (detected > photons || detected > bins) return 0.0;

    KahanSum sum;
    for (int j = 0; j <= detected; ++j) {
        const double base = (1.0 - eta) + static_cast<double>(detected - j) * eta / bins;
        const double term =
            binomial_coefficient(detected, j) * std::pow(base, static_cast<double>(photons));
        sum.add(j % 2 == 0 ? term : -term);
    }
    return binomial_coefficient(bins, detected) * sum.value();
}

std::vector<double> brute_force_distribution(int bins, double eta, int photons) {
    check_params(bins, eta, photons);
    if (bins > 30) throw std::domain_error("brute force supports at most 30 bins");

    double branches = 1.0;
    for (int k = 0; k < photons; ++k) branches *= static_cast<double>(bins) + 1.0;
    if (branches > 1e9) {
        throw std::domain_error("brute force instance too large: (N+1)^n = " +
                                std::to_string(branches) + " branches exceeds 1e9");
    }

    std::vector<double> dist(static_cast<std::size_t>(photons) + 1, 0.0);
    const double miss = 1.0 - eta;
    const double hit = eta / static_cast<double>(bins);

    // depth-first over per-photon outcomes; mask tracks clicked bins
    auto descend = [&](auto&& self, int remaining, std::uint32_t mask, double prob) -> void {
        if (remaining == 0) {
            dist[static_cast<std::size_t>(std::popcount(mask))] += prob;
            return;
        }
        self(self, remaining - 1, mask, prob * miss);
        if (eta == 0.0) return;
        for (int bin = 0; bin < bins; ++bin) {
            self(self, remaining - 1, mask | (1u << bin), prob * hit);
        }
    };
    descend(descend, photons, 0u, 1.0);
    return dist;
}

double brute_force_pmn(int bins, double eta, int detected, int photons) {
    if (detected < 0) throw std::invalid_argument("detected count must be non-negative");
    const std::vector<double> dist = brute_force_distribution(bins, eta, photons);
    if (detected > photons) return 0.0;
    return dist[static_cast<std::size_t>(detected)];
}

}  // namespace tmd
