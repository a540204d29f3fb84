#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ginls/dynamics.hpp"

namespace ginls {
namespace lab {

struct InitialSpec {
    std::string kind = "constant";  // constant | plane_wave | grey_pair |
                                    // bump_perturbation | random_band
    int mode = 1;          // plane_wave
    double theta = 0.3;    // grey_pair
    double x0 = 0.0;       // grey_pair; 0 means L/4
    double amp = 0.1;      // bump_perturbation, random_band
    double width = 1.0;    // bump_perturbation
    int band = 8;          // random_band
};

struct RunConfig {
    // [grid]
    std::size_t n = 256;
    double length = 8.0 * M_PI;
    // [params]
    ModelParams params;
    // [initial]
    InitialSpec initial;
    // [run]
    double T = 1.0;
    double dt = 0.0;       // used when dt_auto is false
    bool dt_auto = true;
    int record_every = 8;
    double seam_tol = 1e-6;
    // [experiment]
    std::vector<int> levels = {1, 2, 3, 4};
    int lmax = 6;
    std::vector<double> deltas = {2.0, 4.0, 8.0, 16.0};
    std::vector<double> perturbations = {3e-2, 1e-2, 3e-3, 1e-3, 3e-4};
    bool grid_double_check = false;
    double drift_tol = 1e-6;

    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware default
};

// Structured-text config: [section] headers, key = value lines, '#' comments.
// Returns the flattened section.key -> value map.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

// Build a RunConfig from key/value pairs, collecting one message per invalid
// or unknown field; the config is usable only when errors comes back empty.
RunConfig build_config(const std::map<std::string, std::string>& kv,
                       std::vector<std::string>& errors);

// Apply a dotted-key command line override ("params.delta=2.5").
void apply_override(std::map<std::string, std::string>& kv, const std::string& assignment,
                    std::vector<std::string>& errors);

// Re-check every module precondition reachable from the config (fail fast).
std::vector<std::string> validate_config(const RunConfig& cfg);

// One-line structured echo of the full config (CSV headers, snapshot headers).
std::string config_echo(const RunConfig& cfg);

FieldState build_initial_data(const RunConfig& cfg, const GridPtr& grid);

}  // namespace lab
}  // namespace ginls
