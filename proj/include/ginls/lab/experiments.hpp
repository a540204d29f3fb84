#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ginls/lab/config.hpp"

namespace ginls {
namespace lab {

// Exit codes shared by the CLI: 0 success, 2 config error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Run one trajectory per the config; write <out>/timeseries.csv plus initial
// and final snapshots. Deterministic given config and seed.
int run_simulation(const RunConfig& cfg, const std::string& outdir, std::ostream& log);

struct MollifiedReport {
    std::vector<int> levels;
    std::vector<double> distances;        // sup_t d^1(u^(l), u^(lmax))
    double slope = 0.0;                   // log2 fit of distance vs level
    double slope_doubled_grid = 0.0;      // only when grid_double_check
    bool monotone = true;
    bool pass = false;
};
MollifiedReport experiment_mollified(const RunConfig& cfg, std::ostream& log);

struct ContinuityReport {
    std::vector<double> eps;
    std::vector<double> ratios;  // sup_t d^1(u,v) / d^1(phi,psi)
    double loglog_slope = 0.0;
    double ratio_max = 0.0, ratio_min = 0.0;
    bool pass = false;
};
ContinuityReport experiment_continuity(const RunConfig& cfg, std::ostream& log);

struct DeepWaterReport {
    std::vector<double> deltas;
    std::vector<double> distances;       // sup_t d^1(u_delta, u_H)
    std::vector<double> symbol_gaps;     // max nonzero |r_delta|, vs 1/delta
    double fitted_rate = 0.0;            // decay rate in 1/delta
    bool monotone = false;
    bool pass = false;
};
DeepWaterReport experiment_deepwater(const RunConfig& cfg, std::ostream& log);

struct DriftReport {
    double h1_drift = 0.0;
    double mass_drift = 0.0;
    double h2_inls_drift = -1.0;  // negative when not integrable
    double e1_max = 0.0;
    double e1_bound = 0.0;        // explicit chain from conserved H1 (defocusing)
    bool h2_enveloped = true;     // Gronwall envelope check (non-integrable runs)
    double h2_envelope_margin = 0.0;
    bool pass = false;
};
DriftReport experiment_drift(const RunConfig& cfg, const std::string& outdir,
                             std::ostream& log);

// Oracle ground-truth suite. Prints one line per check; each returns the
// number of failures.
int check_operator_ground_truth(std::ostream& log);  // kernel vs Fourier vs grid
int check_transform_identities(std::ostream& log);   // tanh/coth transforms, identities
int check_operators(std::ostream& log);              // both of the above

// Explicit a-priori bound on E^1 from the conserved H1 in the defocusing
// regime (alpha != 0, beta >= 0): every constant in the chain is explicit.
double e1_bound_from_H1(double H1, double alpha, double rho);

// dt budget rounded so the horizon is hit exactly.
double pick_dt(const RunConfig& cfg, const FieldState& f0);

// Gronwall envelope constant for the H2 growth check.
double h2_envelope_constant(const ModelParams& p);

}  // namespace lab
}  // namespace ginls
