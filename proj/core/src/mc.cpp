// SPDX-License-Identifier: Apache-2.0

#include "tia/mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace tia {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("EmpiricalDistribution: empty sample");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("EmpiricalDistribution: non-finite sample");
        }
    }
    std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::ccdf_at(double x) const noexcept {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(values_.end() - it) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::percentile(double q) const {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::invalid_argument("percentile: q must lie in (0,1)");
    }
    const double n = static_cast<double>(values_.size());
    std::size_t idx = static_cast<std::size_t>(std::ceil(q * n));
    idx = std::min(std::max<std::size_t>(idx, 1), values_.size());
    return values_[idx - 1];
}

double EmpiricalDistribution::mean() const noexcept {
    double sum = 0.0;
    for (double v : values_) {
        sum += v;
    }
    return sum / static_cast<double>(values_.size());
}

NormalizedDelayMatrix sample_uncoordinated(TrialRng& rng) {
    std::vector<double> entries(9);
    for (double& e : entries) {
        e = rng.next_unit();
    }
    return NormalizedDelayMatrix(std::move(entries), 3);
}

EmpiricalDistribution run_uncoordinated(const ExperimentConfig& config) {
    config.validate();
    if (config.mode != ExperimentMode::uncoordinated) {
        throw std::invalid_argument("run_uncoordinated: config mode mismatch");
    }
    const DutyCycle rho = config.rho;
    auto phis = detail::run_trials(
        config.trials, config.seed, config.workers,
        [&rho](std::uint64_t, TrialRng& rng) {
            const NormalizedDelayMatrix d = sample_uncoordinated(rng);
            return sum_dof(d, rho).sum;
        });
    return EmpiricalDistribution(std::move(phis));
}

namespace detail {

std::vector<double> run_trials(std::uint64_t trials, std::uint64_t seed, int workers,
                               const std::function<double(std::uint64_t, TrialRng&)>& fn) {
    if (trials < 1) {
        throw std::invalid_argument("run_trials: trials must be >= 1");
    }
    std::size_t n_workers = workers > 0 ? static_cast<std::size_t>(workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<std::size_t>(n_workers, trials);

    std::vector<double> results(trials);
    const auto run_block = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            TrialRng rng(seed, t);
            results[t] = fn(t, rng);
        }
    };

    if (n_workers == 1) {
        run_block(0, trials);
        return results;
    }

    const std::uint64_t chunk = (trials + n_workers - 1) / n_workers;
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < n_workers; ++w) {
        const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t end = std::min(trials, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            try {
                run_block(begin, end);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

}  // namespace detail

}  // namespace tia
