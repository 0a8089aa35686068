// SPDX-License-Identifier: Apache-2.0
//
// Transmit-delay optimization: exhaustive grid search plus coordinate
// refinement over the two free delay offsets (the first is pinned, the
// objective being invariant to a common shift).

#ifndef TIA_ALIGN_HPP
#define TIA_ALIGN_HPP

#include <cstdint>
#include <vector>

#include "tia/dof.hpp"
#include "tia/experiment_config.hpp"
#include "tia/mc.hpp"

namespace tia {

struct OptimizerDiagnostics {
    int grid = 0;
    int refine = 0;
    std::uint64_t evaluations = 0;
    int refinement_steps = 0;
    /// Running best objective, appended at every strict improvement.
    std::vector<double> best_values;
};

struct AlignmentSolution {
    TransmitDelays delta;
    DofResult dof;
    OptimizerDiagnostics diagnostics;
};

/// Maximizes phi over delta_2, delta_3 for a 3x3 normalized delay matrix.
/// delta_1 is fixed at settings.gauge. The grid scan visits k/grid lexicographically
/// and keeps the first maximum; refinement halves the step from 1/(2*grid)
/// down to 1/refine, moving to the best strictly-improving axis neighbour.
AlignmentSolution optimize_delays(const NormalizedDelayMatrix& b, const DutyCycle& rho,
                                  const OptimizerSettings& settings);

/// Distribution of the optimized phi over config.trials random delay matrices.
EmpiricalDistribution run_coordinated(const ExperimentConfig& config);

}  // namespace tia

#endif  // TIA_ALIGN_HPP
