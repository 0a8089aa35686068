// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner. One subcommand per experiment; each writes CSV results
// plus a JSON manifest into --out. Outputs are byte-identical for a fixed
// seed regardless of worker count.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O failure.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tia/align.hpp"
#include "tia/analytic.hpp"
#include "tia/experiment_config.hpp"
#include "tia/geo.hpp"
#include "tia/mc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr double kPhiStep = 1e-3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits, locale-independent.
void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out += buf;
}

std::string format_number(double v) {
    std::string s;
    append_number(s, v);
    return s;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    }
    return fs::path(dir);
}

// Named outputs with content digests, written together with the manifest.
class OutputSet {
public:
    void add(std::string name, std::string content) {
        files_.emplace_back(std::move(name), std::move(content));
    }

    json digests() const {
        json d = json::object();
        for (const auto& [name, content] : files_) {
            d[name] = fnv1a64_hex(content);
        }
        return d;
    }

    void write_all(const fs::path& dir, const json& manifest) const {
        for (const auto& [name, content] : files_) {
            write_file(dir / name, content);
        }
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

json make_manifest(const std::string& command, const json& config, double duration_seconds,
                   const OutputSet& outputs, const json& summary) {
    return json{
        {"command", command},
        {"tool_version", kToolVersion},
        {"config", config},
        {"duration_seconds", duration_seconds},
        {"digest_algorithm", "fnv1a-64"},
        {"outputs", outputs.digests()},
        {"summary", summary},
    };
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<double> rho;
    std::optional<int> workers;
};

tia::ExperimentFileConfig load_file_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) {
        return {};
    }
    return tia::parse_experiment_file(opts.config_path);
}

double default_rho(tia::ExperimentMode mode) {
    return mode == tia::ExperimentMode::satellite ? 0.43 : 0.5;
}

std::uint64_t default_trials(tia::ExperimentMode mode) {
    // Coordinated and satellite runs pay a per-trial grid search.
    return mode == tia::ExperimentMode::uncoordinated ? 1000000 : 10000;
}

void reject_satellite_keys(const tia::ExperimentFileConfig& file) {
    if (file.slot_seconds || file.satellite_longitudes || file.ground_lat_range ||
        file.ground_lon_range) {
        throw std::invalid_argument(
            "config: T_seconds/sat_longitudes/ground_lat_range/ground_lon_range are only valid "
            "in satellite mode");
    }
}

tia::ExperimentConfig resolve_config(tia::ExperimentMode mode,
                                     const tia::ExperimentFileConfig& file,
                                     const CommonOpts& opts) {
    if (file.mode && *file.mode != mode) {
        throw std::invalid_argument("config: mode '" + tia::to_string(*file.mode) +
                                    "' conflicts with the '" + tia::to_string(mode) +
                                    "' subcommand");
    }
    tia::ExperimentConfig config;
    config.mode = mode;
    double rho = default_rho(mode);
    if (file.rho) {
        rho = *file.rho;
    }
    if (opts.rho) {
        rho = *opts.rho;
    }
    config.rho = tia::DutyCycle::permissive(rho);
    config.trials = opts.trials ? *opts.trials : file.trials.value_or(default_trials(mode));
    config.seed = opts.seed ? *opts.seed : file.seed.value_or(0);
    if (file.grid) {
        config.optimizer.grid = *file.grid;
    }
    if (file.refine) {
        config.optimizer.refine = *file.refine;
    }
    config.workers = opts.workers ? *opts.workers : file.workers.value_or(0);
    config.validate();
    return config;
}

tia::GeoScenario resolve_scenario(const tia::ExperimentFileConfig& file) {
    tia::GeoScenario scenario;
    if (file.slot_seconds) {
        scenario.slot_seconds = *file.slot_seconds;
    }
    if (file.satellite_longitudes) {
        const auto& lv = *file.satellite_longitudes;
        scenario.satellite_longitudes_deg.assign(lv.begin(), lv.end());
    }
    if (file.ground_lat_range) {
        scenario.ground_lat_range_deg = *file.ground_lat_range;
    }
    if (file.ground_lon_range) {
        scenario.ground_lon_range_deg = *file.ground_lon_range;
    }
    scenario.validate();
    return scenario;
}

json config_json(const tia::ExperimentConfig& config) {
    return json{
        {"mode", tia::to_string(config.mode)},
        {"rho", config.rho.value()},
        {"trials", config.trials},
        {"seed", config.seed},
        {"grid", config.optimizer.grid},
        {"refine", config.optimizer.refine},
        {"gauge", config.optimizer.gauge},
        {"workers", config.workers},
    };
}

json scenario_json(const tia::GeoScenario& s) {
    return json{
        {"T_seconds", s.slot_seconds},
        {"sat_longitudes", s.satellite_longitudes_deg},
        {"ground_lat_range", {s.ground_lat_range_deg.first, s.ground_lat_range_deg.second}},
        {"ground_lon_range", {s.ground_lon_range_deg.first, s.ground_lon_range_deg.second}},
        {"geo_radius_m", s.geo_radius_m},
        {"earth_radius_m", s.earth_radius_m},
        {"light_speed_m_s", s.light_speed_m_s},
    };
}

std::string empirical_ccdf_csv(const tia::EmpiricalDistribution& dist) {
    std::string csv = "phi,ccdf_empirical\n";
    csv.reserve(32 * dist.size());
    const auto& v = dist.values();
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) {
            ++j;
        }
        append_number(csv, v[i]);
        csv += ',';
        append_number(csv, static_cast<double>(v.size() - j) / n);
        csv += '\n';
        i = j;
    }
    return csv;
}

std::string analytic_ccdf_csv(const tia::MixedDistribution& dist) {
    std::string csv = "phi,ccdf_analytic\n";
    const double hi = dist.support_max();
    const long k_max = static_cast<long>(std::floor(hi / kPhiStep + 1e-9));
    double last_phi = -1.0;
    for (long k = 0; k <= k_max; ++k) {
        const double phi = static_cast<double>(k) * kPhiStep;
        append_number(csv, phi);
        csv += ',';
        append_number(csv, dist.ccdf(phi));
        csv += '\n';
        last_phi = phi;
    }
    if (last_phi < hi - 1e-12) {
        append_number(csv, hi);
        csv += ',';
        append_number(csv, dist.ccdf(hi));
        csv += '\n';
    }
    return csv;
}

std::string atoms_csv(const tia::MixedDistribution& dist) {
    std::string csv = "location,weight\n";
    for (const tia::Atom& a : dist.atoms()) {
        append_number(csv, a.location);
        csv += ',';
        append_number(csv, a.weight);
        csv += '\n';
    }
    return csv;
}

json empirical_summary(const tia::EmpiricalDistribution& dist) {
    std::size_t distinct = 0;
    const auto& v = dist.values();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) {
            ++j;
        }
        ++distinct;
        i = j;
    }
    return json{
        {"trials", dist.size()},
        {"distinct_values", distinct},
        {"mean", dist.mean()},
        {"min", dist.min()},
        {"max", dist.max()},
        {"p90", dist.percentile(0.9)},
        {"p_exceed_1", dist.ccdf_at(1.0)},
    };
}

int run_analytic(const CommonOpts& opts) {
    const auto start = std::chrono::steady_clock::now();
    const auto file = load_file_config(opts);
    reject_satellite_keys(file);
    std::optional<double> rho_value = opts.rho ? opts.rho : file.rho;
    if (!rho_value) {
        throw std::invalid_argument("analytic: rho is required (--rho or config)");
    }
    const tia::DutyCycle rho = tia::DutyCycle::permissive(*rho_value);
    const tia::MixedDistribution dist = tia::pdf_phi(rho);

    OutputSet outputs;
    outputs.add("ccdf.csv", analytic_ccdf_csv(dist));
    outputs.add("atoms.csv", atoms_csv(dist));

    const fs::path dir = prepare_out_dir(opts.out_dir);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json manifest = make_manifest(
        "analytic", json{{"rho", rho.value()}, {"phi_step", kPhiStep}}, dt, outputs,
        json{{"p_exceed_1", dist.ccdf(1.0)},
             {"support_max", dist.support_max()},
             {"mean", dist.mean()}});
    outputs.write_all(dir, manifest);
    return 0;
}

int run_experiment(tia::ExperimentMode mode, const CommonOpts& opts) {
    const auto start = std::chrono::steady_clock::now();
    const auto file = load_file_config(opts);
    if (mode != tia::ExperimentMode::satellite) {
        reject_satellite_keys(file);
    }
    const tia::ExperimentConfig config = resolve_config(mode, file, opts);

    json cfg = config_json(config);
    std::optional<tia::EmpiricalDistribution> dist;
    if (mode == tia::ExperimentMode::uncoordinated) {
        dist = tia::run_uncoordinated(config);
    } else if (mode == tia::ExperimentMode::coordinated) {
        dist = tia::run_coordinated(config);
    } else {
        const tia::GeoScenario scenario = resolve_scenario(file);
        const auto bounds = tia::delay_bounds(scenario);
        if (bounds.second < 10.0 * scenario.slot_seconds) {
            std::fprintf(stderr,
                         "warning: maximum propagation delay %.6g s is below 10 slots "
                         "(T = %.6g s); the long-delay assumption is degraded\n",
                         bounds.second, scenario.slot_seconds);
        }
        cfg["scenario"] = scenario_json(scenario);
        dist = tia::run_satellite(config, scenario);
    }

    OutputSet outputs;
    outputs.add("ccdf.csv", empirical_ccdf_csv(*dist));

    const fs::path dir = prepare_out_dir(opts.out_dir);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json manifest = make_manifest(tia::to_string(mode), cfg, dt, outputs,
                                        empirical_summary(*dist));
    outputs.write_all(dir, manifest);
    return 0;
}

struct SweepOpts {
    std::string mode;
    double rho_min = 1.0 / 3.0;
    double rho_max = 0.5;
    double rho_step = 0.01;
};

int run_rho_sweep(const CommonOpts& opts, const SweepOpts& sweep) {
    const auto start = std::chrono::steady_clock::now();
    const auto file = load_file_config(opts);
    reject_satellite_keys(file);

    tia::ExperimentMode mode;
    if (sweep.mode == "uncoordinated") {
        mode = tia::ExperimentMode::uncoordinated;
    } else if (sweep.mode == "coordinated") {
        mode = tia::ExperimentMode::coordinated;
    } else {
        throw std::invalid_argument("rho-sweep: mode must be uncoordinated or coordinated");
    }
    if (!(sweep.rho_step > 0.0)) {
        throw std::invalid_argument("rho-sweep: step must be positive");
    }
    if (sweep.rho_min < 1.0 / 3.0 - 1e-12 || sweep.rho_max > 0.5 + 1e-12 ||
        sweep.rho_min > sweep.rho_max) {
        throw std::invalid_argument("rho-sweep: range must lie within [1/3, 1/2]");
    }

    const bool analytic_column = mode == tia::ExperimentMode::uncoordinated;
    std::string csv = analytic_column ? "rho,p_exceed_1_analytic,p_exceed_1_empirical\n"
                                      : "rho,p_exceed_1_empirical\n";

    const long k_max =
        static_cast<long>(std::floor((sweep.rho_max - sweep.rho_min) / sweep.rho_step + 1e-9));
    double argmax_rho = 0.0;
    double argmax_p = -1.0;
    json base_cfg;
    for (long k = 0; k <= k_max; ++k) {
        double r = sweep.rho_min + static_cast<double>(k) * sweep.rho_step;
        // Snap float drift back onto the admissible interval endpoints.
        if (r < 1.0 / 3.0 && r > 1.0 / 3.0 - 1e-9) {
            r = 1.0 / 3.0;
        }
        if (r > 0.5 && r < 0.5 + 1e-9) {
            r = 0.5;
        }
        CommonOpts row_opts = opts;
        row_opts.rho = r;
        const tia::ExperimentConfig config = resolve_config(mode, file, row_opts);
        if (k == 0) {
            base_cfg = config_json(config);
        }
        const tia::EmpiricalDistribution dist = mode == tia::ExperimentMode::uncoordinated
                                                    ? tia::run_uncoordinated(config)
                                                    : tia::run_coordinated(config);
        const double p_emp = dist.ccdf_at(1.0);
        append_number(csv, r);
        csv += ',';
        double tracked = p_emp;
        if (analytic_column) {
            const double p_ana = tia::prob_exceeds_one(config.rho);
            append_number(csv, p_ana);
            csv += ',';
            tracked = p_ana;
        }
        append_number(csv, p_emp);
        csv += '\n';
        if (tracked > argmax_p) {
            argmax_p = tracked;
            argmax_rho = r;
        }
    }

    base_cfg["rho_min"] = sweep.rho_min;
    base_cfg["rho_max"] = sweep.rho_max;
    base_cfg["rho_step"] = sweep.rho_step;
    base_cfg.erase("rho");

    OutputSet outputs;
    outputs.add("sweep.csv", std::move(csv));

    const fs::path dir = prepare_out_dir(opts.out_dir);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json manifest = make_manifest(
        "rho-sweep", base_cfg, dt, outputs,
        json{{"argmax_rho", argmax_rho},
             {"argmax_p", argmax_p},
             {"argmax_column",
              analytic_column ? "p_exceed_1_analytic" : "p_exceed_1_empirical"}});
    outputs.write_all(dir, manifest);
    return 0;
}

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool experiment_flags, bool rho_flag) {
    cmd->add_option("--config", opts.config_path, "Config file (key = value lines)");
    cmd->add_option("--out", opts.out_dir, "Output directory")->required();
    if (rho_flag) {
        cmd->add_option("--rho", opts.rho, "Duty cycle in [1/3, 1/2]");
    }
    if (experiment_flags) {
        cmd->add_option("--seed", opts.seed, "Master seed (default 0)");
        cmd->add_option("--trials", opts.trials, "Trial count");
        cmd->add_option("--workers", opts.workers, "Worker threads (0 = hardware)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-offset interference alignment experiments"};
    app.set_version_flag("--version", std::string("tia ") + kToolVersion);
    app.require_subcommand(1);

    CommonOpts analytic_opts;
    CLI::App* analytic_cmd =
        app.add_subcommand("analytic", "Closed-form CCDF of the sum DoF (CSV + atom list)");
    add_common_options(analytic_cmd, analytic_opts, false, true);

    CommonOpts unc_opts;
    CLI::App* unc_cmd = app.add_subcommand(
        "uncoordinated", "Empirical CCDF of the sum DoF for random transmit delays");
    add_common_options(unc_cmd, unc_opts, true, true);

    CommonOpts coord_opts;
    CLI::App* coord_cmd = app.add_subcommand(
        "coordinated", "Empirical CCDF of the optimized sum DoF for random delay matrices");
    add_common_options(coord_cmd, coord_opts, true, true);

    CommonOpts sat_opts;
    CLI::App* sat_cmd = app.add_subcommand(
        "satellite", "Empirical CCDF of the optimized sum DoF for the satellite scenario");
    add_common_options(sat_cmd, sat_opts, true, true);

    CommonOpts sweep_common;
    SweepOpts sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand(
        "rho-sweep", "P(phi > 1) against the duty cycle over a range of rho");
    add_common_options(sweep_cmd, sweep_common, true, false);
    sweep_cmd->add_option("--mode", sweep_opts.mode, "uncoordinated or coordinated")->required();
    sweep_cmd->add_option("--rho-min", sweep_opts.rho_min, "Sweep start (default 1/3)");
    sweep_cmd->add_option("--rho-max", sweep_opts.rho_max, "Sweep end (default 0.5)");
    sweep_cmd->add_option("--rho-step", sweep_opts.rho_step, "Sweep step (default 0.01)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analytic_cmd->parsed()) {
            return run_analytic(analytic_opts);
        }
        if (unc_cmd->parsed()) {
            return run_experiment(tia::ExperimentMode::uncoordinated, unc_opts);
        }
        if (coord_cmd->parsed()) {
            return run_experiment(tia::ExperimentMode::coordinated, coord_opts);
        }
        if (sat_cmd->parsed()) {
            return run_experiment(tia::ExperimentMode::satellite, sat_opts);
        }
        if (sweep_cmd->parsed()) {
            return run_rho_sweep(sweep_common, sweep_opts);
        }
        std::fprintf(stderr, "error: no subcommand given\n");
        return 2;
    } catch (const tia::ConfigParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
