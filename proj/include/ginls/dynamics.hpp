#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ginls/field.hpp"
#include "ginls/symbols.hpp"

namespace ginls {

// Which nonlocal operator multiplies the beta term: T_delta (finite depth) or
// the Hilbert transform (deep-water companion runs).
enum class NonlocalKind { TDelta, Hilbert };

struct ModelParams {
    double alpha = 1.0;
    double beta = 1.0;
    double delta = 1.0;
    double rho = 1.0;
    std::optional<int> moll_level;  // nullopt = unmollified
    bool dealias = true;
    NonlocalKind nonlocal = NonlocalKind::TDelta;

    void validate() const {
        if (!(delta > 0.0)) throw std::invalid_argument("ModelParams: delta must be positive");
        if (!(rho > 0.0)) throw std::invalid_argument("ModelParams: rho must be positive");
        if (moll_level && *moll_level < 0)
            throw std::invalid_argument("ModelParams: moll_level must be >= 0");
    }
};

// beta == ±|alpha| != 0, where the equation is completely integrable.
bool integrable_params(const ModelParams& p);

struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// N(u) = i u (alpha + i beta T_delta) d/dx |u|^2, evaluated pseudo-spectrally
// (pointwise |u|^2, multiplier derivatives, pointwise combination), with the
// 2/3-rule applied to the quadratic and the output when p.dealias is set.
FieldState nonlinearity(const FieldState& f, const ModelParams& p);

// (N_delta, N_inf) with N_delta(u) = -beta u L_delta |u|^2 and
// N_inf(u) = i u (alpha + i beta H) d/dx |u|^2; the pair sums to N(u).
std::pair<FieldState, FieldState> nonlinearity_split(const FieldState& f,
                                                     const ModelParams& p);

// Full right-hand side du/dt = -i (d^2/dx^2 u + P_le N(P_le u)).
FieldState rhs_mollified(const FieldState& f, const ModelParams& p);
// Nonlinear part alone, -i P_le N(P_le u), for integrating-factor use.
FieldState rhs_nonlinear(const FieldState& f, const ModelParams& p);

// Default step budget: min(0.5/xi_max, 0.05*dx/(1 + max|f0|^2)).
double stability_dt(const FieldState& f0);

struct Trajectory {
    std::vector<FieldState> states;  // recorded snapshots, first and last always
    ModelParams params;
    double dt = 0.0;
    int record_every = 1;
    std::size_t steps_taken = 0;
    static constexpr int stepper_order = 4;
    bool failed = false;
    std::string failure;
};

// One integrating-factor RK4 step (exact linear propagation, order-4 nonlinear
// coupling). Throws StepFailure on non-finite values.
FieldState step(const FieldState& f, double dt, const ModelParams& p);

// ceil(T/dt) uniform steps; snapshots every record_every steps plus first and
// last. On step failure the partial trajectory is returned with failed set.
Trajectory evolve(const FieldState& f0, double T, double dt, const ModelParams& p,
                  int record_every);

// || u(T) - U(T)u(0) + i * Simpson[ U(T-s) P N(P u(s)) ds ] ||_{L^2} over the
// recorded states, relative to ||u(T)||_{L^2}. Requires an odd number (>= 5)
// of uniformly spaced records.
double duhamel_residual(const Trajectory& traj);

// --- initial data ---------------------------------------------------------

FieldState initial_constant(GridPtr grid, double rho);
// rho e^{i xi_mode x} with xi_mode = 2 pi mode / L.
FieldState initial_plane_wave(GridPtr grid, double rho, int mode);
// Two mirrored grey-soliton profiles at ±x0 with zero net phase winding:
//   u = rho (cos t tanh(k(x+x0)) + i sin t)(-cos t tanh(k(x-x0)) + i sin t),
// k = rho cos t. Not an exact solution; nonvanishing test data. Errors if the
// seam check at 1e-8 fails (box too small).
FieldState initial_grey_pair(GridPtr grid, double rho, double theta, double x0);
// rho + amp * sech(x / width).
FieldState initial_bump(GridPtr grid, double rho, double amp, double width);
// rho + amp * sum_{1<=|k|<=band} (1+|xi_k|)^{-2.75} e^{i theta_k} e^{i xi_k x},
// phases theta_k drawn from the counter-based generator at `seed`.
FieldState initial_random_band(GridPtr grid, double rho, std::uint64_t seed, int band,
                               double amp = 0.1);

}  // namespace ginls
