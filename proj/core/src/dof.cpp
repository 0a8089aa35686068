// SPDX-License-Identifier: Apache-2.0

#include "tia/dof.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "tia/arc.hpp"

namespace tia {

DutyCycle::DutyCycle(double rho, int num_pairs) : DutyCycle(rho, num_pairs, false) {}

DutyCycle DutyCycle::permissive(double rho, int num_pairs) {
    return DutyCycle(rho, num_pairs, true);
}

DutyCycle::DutyCycle(double rho, int num_pairs, bool allow_boundary) : rho_(rho) {
    if (num_pairs < 2) {
        throw std::invalid_argument("DutyCycle: need at least 2 pairs");
    }
    const double lower = 1.0 / num_pairs;
    if (!std::isfinite(rho) || rho > 0.5 || rho < lower ||
        (rho == lower && !allow_boundary)) {
        throw std::invalid_argument("DutyCycle: rho outside (1/K, 1/2]");
    }
}

TransmitDelays::TransmitDelays(std::vector<double> delta) : delta_(std::move(delta)) {
    if (delta_.empty()) {
        throw std::invalid_argument("TransmitDelays: empty");
    }
    for (double d : delta_) {
        if (!(d >= 0.0 && d < 1.0)) {
            throw std::invalid_argument("TransmitDelays: entry outside [0,1)");
        }
    }
}

TransmitDelays TransmitDelays::zeros(int num_pairs) {
    if (num_pairs < 1) {
        throw std::invalid_argument("TransmitDelays: need at least 1 pair");
    }
    return TransmitDelays(std::vector<double>(static_cast<std::size_t>(num_pairs), 0.0));
}

DelayMatrix::DelayMatrix(std::vector<double> entries, int size, double slot_seconds)
    : entries_(std::move(entries)), size_(size), slot_(slot_seconds) {
    if (size_ < 2) {
        throw std::invalid_argument("DelayMatrix: size must be >= 2");
    }
    if (entries_.size() != static_cast<std::size_t>(size_) * size_) {
        throw std::invalid_argument("DelayMatrix: entry count != size*size");
    }
    if (!(slot_ > 0.0) || !std::isfinite(slot_)) {
        throw std::invalid_argument("DelayMatrix: slot must be positive");
    }
    for (double a : entries_) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("DelayMatrix: delays must be positive and finite");
        }
    }
}

bool DelayMatrix::in_long_delay_regime() const noexcept {
    double max_a = 0.0;
    for (double a : entries_) {
        max_a = std::max(max_a, a);
    }
    return max_a >= 10.0 * slot_;
}

NormalizedDelayMatrix::NormalizedDelayMatrix(std::vector<double> entries, int size)
    : entries_(std::move(entries)), size_(size) {
    if (size_ < 2) {
        throw std::invalid_argument("NormalizedDelayMatrix: size must be >= 2");
    }
    if (entries_.size() != static_cast<std::size_t>(size_) * size_) {
        throw std::invalid_argument("NormalizedDelayMatrix: entry count != size*size");
    }
    for (double d : entries_) {
        if (!(d >= 0.0 && d < 1.0)) {
            throw std::invalid_argument("NormalizedDelayMatrix: entry outside [0,1)");
        }
    }
}

double mod_unit(double x) noexcept {
    double r = x - std::floor(x);
    // floor can leave r == 1.0 when x is a negative value epsilon-close to an integer.
    if (r >= 1.0) {
        r = 0.0;
    }
    return r;
}

NormalizedDelayMatrix NormalizedDelayMatrix::with_transmit_delays(
    const TransmitDelays& delta) const {
    if (delta.size() != size_) {
        throw std::invalid_argument("with_transmit_delays: dimension mismatch");
    }
    std::vector<double> shifted(entries_.size());
    for (int i = 0; i < size_; ++i) {
        for (int j = 0; j < size_; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * size_ + j;
            shifted[idx] = mod_unit(entries_[idx] + delta[j]);
        }
    }
    return NormalizedDelayMatrix(std::move(shifted), size_);
}

NormalizedDelayMatrix normalize(const DelayMatrix& a, const TransmitDelays& delta) {
    const int k = a.size();
    if (delta.size() != k) {
        throw std::invalid_argument("normalize: dimension mismatch");
    }
    std::vector<double> d(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            d[static_cast<std::size_t>(i) * k + j] = mod_unit(a.entry(i, j) / a.slot() + delta[j]);
        }
    }
    return NormalizedDelayMatrix(std::move(d), k);
}

double pair_dof(const NormalizedDelayMatrix& d, int i, const DutyCycle& rho) {
    const int k = d.size();
    if (i < 0 || i >= k) {
        throw std::out_of_range("pair_dof: receiver index out of range");
    }
    constexpr int kMaxStack = 8;
    double stack_starts[kMaxStack];
    std::vector<double> heap_starts;
    double* starts = stack_starts;
    if (k - 1 > kMaxStack) {
        heap_starts.resize(static_cast<std::size_t>(k - 1));
        starts = heap_starts.data();
    }
    int n = 0;
    for (int j = 0; j < k; ++j) {
        if (j != i) {
            starts[n++] = d.entry(i, j);
        }
    }
    const Arc desired(d.entry(i, i), rho.value());
    return uncovered_measure(desired, std::span<const double>(starts, static_cast<std::size_t>(n)),
                             rho.value());
}

DofResult sum_dof(const NormalizedDelayMatrix& d, const DutyCycle& rho) {
    DofResult result;
    result.per_pair.reserve(static_cast<std::size_t>(d.size()));
    for (int i = 0; i < d.size(); ++i) {
        const double a = pair_dof(d, i, rho);
        result.per_pair.push_back(a);
        result.sum += a;
    }
    return result;
}

}  // namespace tia
