// SPDX-License-Identifier: Apache-2.0

#include "tia/align.hpp"

#include <stdexcept>
#include <utility>

#include "tia/arc.hpp"

namespace tia {

namespace {

// Objective phi for column shifts (d1,d2,d3), bit-identical to
// sum_dof(b.with_transmit_delays(...)): same mod_unit, same coverage routine.
double shifted_sum_dof(const double* b, double d1, double d2, double d3, double rho) {
    const double shift[3] = {d1, d2, d3};
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        double d[3];
        for (int j = 0; j < 3; ++j) {
            d[j] = mod_unit(b[i * 3 + j] + shift[j]);
        }
        const double starts[2] = {d[i == 0 ? 1 : 0], d[i == 2 ? 1 : 2]};
        total += uncovered_measure(Arc(d[i], rho), std::span<const double>(starts, 2), rho);
    }
    return total;
}

}  // namespace

AlignmentSolution optimize_delays(const NormalizedDelayMatrix& b, const DutyCycle& rho,
                                  const OptimizerSettings& settings) {
    if (b.size() != 3) {
        throw std::invalid_argument("optimize_delays: specialized to 3 pairs");
    }
    if (settings.grid < 2) {
        throw std::invalid_argument("optimize_delays: grid must be >= 2");
    }
    if (settings.refine < settings.grid) {
        throw std::invalid_argument("optimize_delays: refine must be >= grid");
    }
    if (!(settings.gauge >= 0.0 && settings.gauge < 1.0)) {
        throw std::invalid_argument("optimize_delays: gauge must lie in [0,1)");
    }

    const double* entries = b.entries().data();
    const double r = rho.value();
    const double d1 = settings.gauge;
    const int g = settings.grid;

    OptimizerDiagnostics diag;
    diag.grid = settings.grid;
    diag.refine = settings.refine;

    double best2 = 0.0;
    double best3 = 0.0;
    double best = -1.0;
    for (int k2 = 0; k2 < g; ++k2) {
        const double c2 = static_cast<double>(k2) / g;
        for (int k3 = 0; k3 < g; ++k3) {
            const double c3 = static_cast<double>(k3) / g;
            const double value = shifted_sum_dof(entries, d1, c2, c3, r);
            ++diag.evaluations;
            if (value > best) {
                best = value;
                best2 = c2;
                best3 = c3;
                diag.best_values.push_back(best);
            }
        }
    }

    // Axis-aligned descent on the dyadic lattice below the grid spacing.
    const double step_floor = 1.0 / settings.refine;
    double step = 1.0 / (2.0 * g);
    while (step >= step_floor) {
        const double cand[4][2] = {
            {mod_unit(best2 + step), best3},
            {mod_unit(best2 - step), best3},
            {best2, mod_unit(best3 + step)},
            {best2, mod_unit(best3 - step)},
        };
        double move_value = best;
        int move = -1;
        for (int c = 0; c < 4; ++c) {
            const double value = shifted_sum_dof(entries, d1, cand[c][0], cand[c][1], r);
            ++diag.evaluations;
            if (value > move_value) {
                move_value = value;
                move = c;
            }
        }
        if (move >= 0) {
            best = move_value;
            best2 = cand[move][0];
            best3 = cand[move][1];
            ++diag.refinement_steps;
            diag.best_values.push_back(best);
        } else {
            step *= 0.5;
        }
    }

    TransmitDelays delta({d1, best2, best3});
    const NormalizedDelayMatrix d = b.with_transmit_delays(delta);
    AlignmentSolution solution{std::move(delta), sum_dof(d, rho), std::move(diag)};
    return solution;
}

EmpiricalDistribution run_coordinated(const ExperimentConfig& config) {
    config.validate();
    if (config.mode != ExperimentMode::coordinated) {
        throw std::invalid_argument("run_coordinated: config mode mismatch");
    }
    const DutyCycle rho = config.rho;
    const OptimizerSettings settings = config.optimizer;
    auto phis = detail::run_trials(
        config.trials, config.seed, config.workers,
        [&rho, &settings](std::uint64_t, TrialRng& rng) {
            const NormalizedDelayMatrix b = sample_uncoordinated(rng);
            return optimize_delays(b, rho, settings).dof.sum;
        });
    return EmpiricalDistribution(std::move(phis));
}

}  // namespace tia
