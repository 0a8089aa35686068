// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine: deterministic parallel trial evaluation and the
// uncoordinated (uniform random delays) experiment.

#ifndef TIA_MC_HPP
#define TIA_MC_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "tia/dof.hpp"
#include "tia/experiment_config.hpp"
#include "tia/rng.hpp"

namespace tia {

/// Sorted sample of a scalar statistic.
class EmpiricalDistribution {
public:
    /// Takes ownership and sorts; values must be non-empty and finite.
    explicit EmpiricalDistribution(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Fraction of samples strictly greater than x.
    double ccdf_at(double x) const noexcept;

    /// Lower empirical quantile for q in (0,1): the ceil(q*n)-th smallest.
    double percentile(double q) const;

    double mean() const noexcept;
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

private:
    std::vector<double> values_;
};

/// One draw of the normalized delay matrix with all nine entries uniform on
/// [0,1), row-major consumption order.
NormalizedDelayMatrix sample_uncoordinated(TrialRng& rng);

/// Distribution of phi over config.trials independent delay matrices.
EmpiricalDistribution run_uncoordinated(const ExperimentConfig& config);

namespace detail {

/// Evaluates fn(trial, rng) for every trial in [0, trials), where rng is the
/// trial's own stream. Work is split across workers in contiguous blocks;
/// the result vector is indexed by trial, so the output is identical for
/// every worker count.
std::vector<double> run_trials(std::uint64_t trials, std::uint64_t seed, int workers,
                               const std::function<double(std::uint64_t, TrialRng&)>& fn);

}  // namespace detail

}  // namespace tia

#endif  // TIA_MC_HPP
