#pragma once

#include <vector>

#include "ginls/field.hpp"

namespace ginls {

// || d/dx f ||_{H^{k-1}} via the spectral weight (1 + xi^2)^{k-1} xi^2 and the
// exact band-limited Plancherel normalization L * sum |c_k|^2.
double deriv_sobolev_norm(const FieldState& f, int k);

// || |f|^2 - rho^2 ||_{L^2}
double sq_dev_norm(const FieldState& f);

// || d^2/dx^2 f ||_{L^2} (spectral weight xi^4).
double dx2_norm(const FieldState& f);

// Size functional on the Zhidkov-type space:
//   E^k_rho(f) = ||d/dx f||^2_{H^{k-1}} + ||f||^2_{Linf} + || |f|^2-rho^2 ||_{L^2}.
double energy_Ek(const FieldState& f, int k);

// Distance on the same space:
//   d^k_rho(f,g) = ||d/dx (f-g)||_{H^{k-1}} + ||f-g||_{Linf} + || |f|^2-|g|^2 ||_{L^2}.
double dist_dk(const FieldState& f, const FieldState& g, int k);

// max over the outer 10% of the box (|x| >= 0.45 L) of | |f| - rho |.
double seam_gap(const FieldState& f);
bool seam_check(const FieldState& f, double tol);

struct MetricsReport {
    int k = 2;
    double E1 = 0.0, E2 = 0.0, Ek = 0.0;
    double linf = 0.0;
    double sq_dev = 0.0;
    double seam_gap = 0.0;
};

MetricsReport metrics_report(const FieldState& f, int k);

// Slowly varying dyadic majorant of the field's frequency content:
//   c_j[f] = sum_k 2^{-eps|j-k|} ||P_k d/dx f||_{H^1}
//          + 2^{-eps j} (||f||_Linf + || |f|^2 - rho^2 ||_{L^2}^{1/2}),
// with the block sum running over every dyadic block the grid resolves.
struct EnvelopeSequence {
    double eps = 0.5;
    std::vector<double> values;       // c_j, j = 0 .. top level
    std::vector<double> block_norms;  // ||P_j d/dx f||_{H^1}, same indexing
};

EnvelopeSequence freq_envelope(const FieldState& f, double eps);

// ||P_j d/dx f||_{H^1} for every block on the grid (test aid).
std::vector<double> lp_block_deriv_h1(const FieldState& f);

}  // namespace ginls
