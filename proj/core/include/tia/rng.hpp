// SPDX-License-Identifier: Apache-2.0
//
// Counter-based per-trial random streams. Each trial gets its own generator
// derived from (master seed, trial index) alone, so results are identical
// for any number of workers and any partition of the trial range.

#ifndef TIA_RNG_HPP
#define TIA_RNG_HPP

#include <cstdint>

namespace tia {

/// SplitMix64 stream seeded by hashing the trial index into the master seed.
/// The start state is mixed so neighbouring trials do not share shifted
/// output windows.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial) noexcept
        : state_(mix(master_seed ^ mix((trial + 1) * kGamma))) {}

    std::uint64_t next_u64() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0,1) with 53-bit resolution.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace tia

#endif  // TIA_RNG_HPP
