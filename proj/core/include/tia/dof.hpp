// SPDX-License-Identifier: Apache-2.0
//
// Per-pair and sum DoF of the K-user interference channel with periodic
// bursts: duty cycle, delay matrices, modular normalization, and the
// coverage-based DoF evaluation.

#ifndef TIA_DOF_HPP
#define TIA_DOF_HPP

#include <vector>

namespace tia {

/// Fraction of the slot during which each transmitter sends.
/// Valid range is (1/K, 1/2]: below 1/K orthogonal access wins, above 1/2
/// no more than 1/2 DoF per user is attainable.
class DutyCycle {
public:
    /// Strict construction; throws std::invalid_argument outside (1/K, 1/2].
    explicit DutyCycle(double rho, int num_pairs = 3);

    /// Admits rho == 1/K exactly (the boundary value is a common operating point).
    static DutyCycle permissive(double rho, int num_pairs = 3);

    double value() const noexcept { return rho_; }

private:
    DutyCycle(double rho, int num_pairs, bool allow_boundary);
    double rho_;
};

/// Initial transmission delays, stored normalized as fractions of the slot
/// (only the modular residue matters).
class TransmitDelays {
public:
    /// Each entry must lie in [0,1).
    explicit TransmitDelays(std::vector<double> delta);
    static TransmitDelays zeros(int num_pairs);

    int size() const noexcept { return static_cast<int>(delta_.size()); }
    double operator[](int i) const { return delta_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const noexcept { return delta_; }

private:
    std::vector<double> delta_;
};

/// Propagation delays in seconds, a_{i,j} from transmitter j to receiver i,
/// together with the slot length T.
class DelayMatrix {
public:
    /// entries is row-major K*K; all entries strictly positive and finite,
    /// K >= 2, slot > 0.
    DelayMatrix(std::vector<double> entries, int size, double slot_seconds);

    int size() const noexcept { return size_; }
    double slot() const noexcept { return slot_; }
    double entry(int i, int j) const { return entries_[static_cast<std::size_t>(i) * size_ + j]; }

    /// The analysis assumes delays much longer than the slot; false when
    /// max entry < 10*T, in which case callers should warn.
    bool in_long_delay_regime() const noexcept;

private:
    std::vector<double> entries_;
    int size_;
    double slot_;
};

/// Delays reduced modulo the slot and divided by it; entries in [0,1).
class NormalizedDelayMatrix {
public:
    NormalizedDelayMatrix(std::vector<double> entries, int size);

    int size() const noexcept { return size_; }
    double entry(int i, int j) const { return entries_[static_cast<std::size_t>(i) * size_ + j]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    /// Adds delta[j] mod 1 to every entry of column j.
    NormalizedDelayMatrix with_transmit_delays(const TransmitDelays& delta) const;

private:
    std::vector<double> entries_;
    int size_;
};

/// Per-pair DoF alpha_i and their sum phi for one network realization.
struct DofResult {
    std::vector<double> per_pair;
    double sum = 0.0;
};

/// x mod 1 mapped into [0,1). Shared by every delay-normalization path so
/// that algebraically equal routes stay bit-identical.
double mod_unit(double x) noexcept;

/// d_{i,j} = (a_{i,j}/T + delta[j]) mod 1. With delta = 0 this is B = (A mod T)/T.
NormalizedDelayMatrix normalize(const DelayMatrix& a, const TransmitDelays& delta);

/// DoF of pair i: the measure of receiver i's desired burst [d_{i,i}, d_{i,i}+rho)
/// left uncovered by the interfering bursts [d_{i,j}, d_{i,j}+rho), j != i.
/// Fragmented interference-free time counts in full.
double pair_dof(const NormalizedDelayMatrix& d, int i, const DutyCycle& rho);

/// All per-pair DoF plus their sum phi.
DofResult sum_dof(const NormalizedDelayMatrix& d, const DutyCycle& rho);

}  // namespace tia

#endif  // TIA_DOF_HPP
