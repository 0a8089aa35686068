// SPDX-License-Identifier: Apache-2.0
//
// Arcs on the unit circle and the uncovered-measure query behind every
// DoF computation. An arc is one periodic transmission burst, expressed
// on the normalized slot [0,1).

#ifndef TIA_ARC_HPP
#define TIA_ARC_HPP

#include <span>

namespace tia {

// Endpoint comparisons in the sweep use this absolute tolerance. Delay
// arithmetic introduces rounding at the 1e-16 scale; gaps below 1e-12 are
// treated as closed.
inline constexpr double kEndpointTol = 1e-12;

/// Half-open arc [start, start+length) on the unit circle, wrapping mod 1.
class Arc {
public:
    /// Requires 0 <= start < 1 and 0 < length <= 1; throws std::invalid_argument.
    Arc(double start, double length);

    double start() const noexcept { return start_; }
    double length() const noexcept { return length_; }

private:
    double start_;
    double length_;
};

/// True iff x lies in the arc under modular wrap. Pre: x in [0,1).
bool contains(const Arc& arc, double x) noexcept;

/// Lebesgue measure of `desired` not covered by the union of `blockers`.
/// Exact event-point sweep: the circle is unrolled at desired.start(),
/// blockers are clipped modulo 1 and merged; no discretization.
double uncovered_measure(const Arc& desired, std::span<const Arc> blockers);

/// Same query for blockers that share one length, given by their start
/// positions only. Avoids materializing Arc objects in hot loops.
double uncovered_measure(const Arc& desired, std::span<const double> blocker_starts,
                         double blocker_length);

}  // namespace tia

#endif  // TIA_ARC_HPP
