#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ginls {
namespace oracle {

using cplx = std::complex<double>;

// Compactly supported function sampled on a uniform symmetric lattice
// [-R, R]; everything in this module works from samples, never from a grid
// transform, so it can stand as ground truth for the spectral layer.
struct LineSampledFunction {
    std::vector<double> nodes;   // strictly increasing, uniform spacing
    std::vector<cplx> values;
    double support_radius = 0.0;  // |f| < 1e-14 outside [-r, r]

    double spacing() const { return nodes[1] - nodes[0]; }
    double window() const { return nodes.back(); }

    static LineSampledFunction sample(double R, std::size_t count,
                                      const std::function<cplx(double)>& f);
};

// Snap x to the sample lattice (the p.v. rule excludes the singular node
// symmetrically, so evaluation points live on the lattice).
double snap_to_lattice(const LineSampledFunction& f, double x);

// Principal-value kernel quadrature
//   (1/2delta) sum_{y_j != x} coth(pi (x - y_j) / (2 delta)) f(y_j) h
// plus the diagonal limit term -(h/pi) f'(x): the punctured sum pairs nodes
// symmetrically about the pole, which leaves the even extension of the paired
// integrand missing its half-weight endpoint value; restoring it makes the
// rule spectrally accurate instead of O(h). f'(x) uses 4th-order central
// differences of the samples.
std::vector<cplx> kernel_Tdelta_pv(const LineSampledFunction& f, double delta,
                                   const std::vector<double>& x);

// Hilbert-kernel counterpart (1/pi) p.v. int f(y)/(x-y) dy, same rule.
std::vector<cplx> kernel_hilbert_pv(const LineSampledFunction& f,
                                    const std::vector<double>& x);

// Torus counterpart of the coth kernel on a box of circumference box_length:
// the pole periodizes to (1/L) cot(pi s / L) in closed form, the smooth
// depth-dependent remainder is summed over images (exponentially convergent).
// This realizes exactly the grid multiplier with its zero mode pinned to 0,
// so it can stand as a 1e-8-class oracle for box functionals.
std::vector<cplx> kernel_Tdelta_pv_periodic(const LineSampledFunction& f, double delta,
                                            double box_length,
                                            const std::vector<double>& x);

// Fourier-side quadrature of the same operator:
//   (1/2pi) int e^{i x xi} (-i coth(delta xi)) fhat(xi) dxi,
// with fhat by direct quadrature of the samples and the xi = 0 singularity
// split as coth(delta xi) = 1/(delta xi) + smooth, the 1/(delta xi) piece
// taken as a principal value by symmetrization.
std::vector<cplx> line_multiplier_Tdelta(const LineSampledFunction& f, double delta,
                                         const std::vector<double>& x);

// Same with coth(delta xi) replaced by sgn(xi): Hilbert transform quadrature.
std::vector<cplx> line_multiplier_hilbert(const LineSampledFunction& f,
                                          const std::vector<double>& x);

struct TransformCheck {
    cplx numeric{};
    cplx closed_form{};
    double identity_residual = 0.0;
};

// F[tanh(x/2)](xi): numeric Abel-regularized quadrature vs -2 i pi cosech(pi xi).
// Rejects |xi| < 1e-3 (principal-value regime).
TransformCheck tanh_fourier_check(double xi);

// F[p.v. coth(x)](xi): numeric (tanh part + regularized cosech part) vs
// -i pi coth(pi xi / 2); also reports the pointwise residual of
// 2 cosech(pi xi) + tanh(pi xi / 2) = coth(pi xi / 2).
TransformCheck coth_fourier_check(double xi);

struct HyperbolicResiduals {
    double coth_split = 0.0;   // coth(x) - tanh(x/2) - cosech(x)
    double half_angle = 0.0;   // cosech(x) + coth(x) - coth(x/2)
};

// Residuals scaled by max(1, |coth(x)|) so the near-zero pole does not
// inflate pure roundoff.
HyperbolicResiduals hyperbolic_identity_suite(double x);

}  // namespace oracle
}  // namespace ginls
