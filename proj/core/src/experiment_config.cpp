// SPDX-License-Identifier: Apache-2.0

#include "tia/experiment_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace tia {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        throw ConfigParseError(line, key, "expected a finite number, got '" + value + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigParseError(line, key, "expected a non-negative integer, got '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    int out = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigParseError(line, key, "expected an integer, got '" + value + "'");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& value, std::size_t count, int line,
                                      const std::string& key) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        const std::string item =
            trim(comma == std::string::npos ? value.substr(start)
                                            : value.substr(start, comma - start));
        if (item.empty()) {
            throw ConfigParseError(line, key, "empty list element");
        }
        out.push_back(parse_double(item, line, key));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (out.size() != count) {
        throw ConfigParseError(line, key,
                               "expected " + std::to_string(count) + " comma-separated values, got " +
                                   std::to_string(out.size()));
    }
    return out;
}

ExperimentMode parse_mode(const std::string& value, int line) {
    if (value == "uncoordinated") {
        return ExperimentMode::uncoordinated;
    }
    if (value == "coordinated") {
        return ExperimentMode::coordinated;
    }
    if (value == "satellite") {
        return ExperimentMode::satellite;
    }
    throw ConfigParseError(line, "mode",
                           "expected uncoordinated, coordinated or satellite, got '" + value + "'");
}

}  // namespace

std::string to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::uncoordinated:
            return "uncoordinated";
        case ExperimentMode::coordinated:
            return "coordinated";
        case ExperimentMode::satellite:
            return "satellite";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    }
    if (optimizer.grid < 8) {
        throw std::invalid_argument("ExperimentConfig: grid must be >= 8");
    }
    if (optimizer.refine < optimizer.grid) {
        throw std::invalid_argument("ExperimentConfig: refine must be >= grid");
    }
    if (!(optimizer.gauge >= 0.0 && optimizer.gauge < 1.0)) {
        throw std::invalid_argument("ExperimentConfig: gauge must lie in [0,1)");
    }
    if (workers < 0) {
        throw std::invalid_argument("ExperimentConfig: workers must be >= 0");
    }
}

ConfigParseError::ConfigParseError(int line, std::string field, const std::string& message)
    : std::runtime_error("config line " + std::to_string(line) + ", key '" + field +
                         "': " + message),
      line_(line),
      field_(std::move(field)) {}

ExperimentFileConfig parse_experiment_text(const std::string& text) {
    ExperimentFileConfig config;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigParseError(line_no, "", "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigParseError(line_no, "", "missing key before '='");
        }
        if (value.empty()) {
            throw ConfigParseError(line_no, key, "missing value");
        }

        const auto reject_duplicate = [&](bool already_set) {
            if (already_set) {
                throw ConfigParseError(line_no, key, "duplicate key");
            }
        };
        if (key == "mode") {
            reject_duplicate(config.mode.has_value());
            config.mode = parse_mode(value, line_no);
        } else if (key == "rho") {
            reject_duplicate(config.rho.has_value());
            config.rho = parse_double(value, line_no, key);
        } else if (key == "trials") {
            reject_duplicate(config.trials.has_value());
            config.trials = parse_u64(value, line_no, key);
        } else if (key == "seed") {
            reject_duplicate(config.seed.has_value());
            config.seed = parse_u64(value, line_no, key);
        } else if (key == "grid") {
            reject_duplicate(config.grid.has_value());
            config.grid = parse_int(value, line_no, key);
        } else if (key == "refine") {
            reject_duplicate(config.refine.has_value());
            config.refine = parse_int(value, line_no, key);
        } else if (key == "workers") {
            reject_duplicate(config.workers.has_value());
            config.workers = parse_int(value, line_no, key);
        } else if (key == "T_seconds") {
            reject_duplicate(config.slot_seconds.has_value());
            config.slot_seconds = parse_double(value, line_no, key);
        } else if (key == "sat_longitudes") {
            reject_duplicate(config.satellite_longitudes.has_value());
            const auto v = parse_double_list(value, 3, line_no, key);
            config.satellite_longitudes = std::array<double, 3>{v[0], v[1], v[2]};
        } else if (key == "ground_lat_range") {
            reject_duplicate(config.ground_lat_range.has_value());
            const auto v = parse_double_list(value, 2, line_no, key);
            config.ground_lat_range = std::make_pair(v[0], v[1]);
        } else if (key == "ground_lon_range") {
            reject_duplicate(config.ground_lon_range.has_value());
            const auto v = parse_double_list(value, 2, line_no, key);
            config.ground_lon_range = std::make_pair(v[0], v[1]);
        } else {
            throw ConfigParseError(line_no, key, "unknown key");
        }
    }
    return config;
}

ExperimentFileConfig parse_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigParseError(0, "", "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_text(buffer.str());
}

}  // namespace tia
