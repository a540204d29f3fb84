#include "ginls/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace ginls {
namespace oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

double adaptive(const std::function<double(double)>& f, double a, double b) {
    return gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-12);
}

void check_uniform(const LineSampledFunction& f) {
    if (f.nodes.size() < 16) throw std::invalid_argument("oracle: too few nodes");
    const double h = f.spacing();
    for (std::size_t j = 1; j < f.nodes.size(); ++j)
        if (std::abs(f.nodes[j] - f.nodes[j - 1] - h) > 1e-9 * h)
            throw std::invalid_argument("oracle: nodes must be uniformly spaced");
    if (f.values.size() != f.nodes.size())
        throw std::invalid_argument("oracle: node/value size mismatch");
    if (!(f.support_radius < f.window()))
        throw std::invalid_argument("oracle: support must lie inside the window");
}

// Index range of nodes inside the support; sums outside contribute nothing.
std::pair<std::size_t, std::size_t> support_range(const LineSampledFunction& f) {
    const double h = f.spacing();
    const double r = f.support_radius + 2.0 * h;
    std::size_t lo = 0, hi = f.nodes.size() - 1;
    while (lo < hi && f.nodes[lo] < -r) ++lo;
    while (hi > lo && f.nodes[hi] > r) --hi;
    return {lo, hi};
}

std::size_t snap_index(const LineSampledFunction& f, double x) {
    const double h = f.spacing();
    const double pos = (x - f.nodes.front()) / h;
    const long j = std::lround(pos);
    if (j < 0 || static_cast<std::size_t>(j) >= f.nodes.size())
        throw std::invalid_argument("oracle: evaluation point outside the window");
    return static_cast<std::size_t>(j);
}

// Shared punctured-sum machinery for odd kernels with residue 1/pi at 0.
// allow_edge admits evaluation points out to the window rim (used by the
// periodic kernel, where the window is one full period and has no edge).
std::vector<cplx> pv_kernel(const LineSampledFunction& f, const std::vector<double>& x,
                            const std::function<double(double)>& kernel,
                            bool allow_edge = false) {
    check_uniform(f);
    const double h = f.spacing();
    const double margin = std::max(5.0 * h, 0.02 * f.window());
    std::vector<cplx> out(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        if (!allow_edge && std::abs(x[q]) > f.window() - margin)
            throw std::invalid_argument("oracle: evaluation point too close to window edge");
        const std::size_t jx = snap_index(f, x[q]);
        const double xs = f.nodes[jx];
        const auto [jlo, jhi] = support_range(f);
        cplx sum(0.0, 0.0);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            if (j == jx) continue;
            sum += kernel(xs - f.nodes[j]) * f.values[j];
        }
        // diagonal limit term; 4th-order central differences for f'(x);
        // near the rim the samples vanish and so does the derivative
        cplx fp(0.0, 0.0);
        if (jx >= 2 && jx + 2 < f.values.size())
            fp = (8.0 * (f.values[jx + 1] - f.values[jx - 1]) -
                  (f.values[jx + 2] - f.values[jx - 2])) /
                 (12.0 * h);
        out[q] = h * sum - (h / M_PI) * fp;
    }
    return out;
}

// fhat(xi) = h sum f(y_j) e^{-i y_j xi}; spectrally accurate for smooth
// compactly supported samples. Only support nodes enter the sum.
cplx direct_transform(const LineSampledFunction& f, double xi) {
    const auto [jlo, jhi] = support_range(f);
    cplx s(0.0, 0.0);
    for (std::size_t j = jlo; j <= jhi; ++j)
        s += f.values[j] * std::polar(1.0, -f.nodes[j] * xi);
    return s * f.spacing();
}

cplx direct_transform_deriv0(const LineSampledFunction& f) {
    const auto [jlo, jhi] = support_range(f);
    cplx s(0.0, 0.0);
    for (std::size_t j = jlo; j <= jhi; ++j)
        s += cplx(0.0, -f.nodes[j]) * f.values[j];
    return s * f.spacing();
}

double detect_band(const LineSampledFunction& f) {
    const double scale = 1.0 + std::abs(direct_transform(f, 0.0));
    double xi = 8.0;
    while (xi < 384.0 &&
           std::abs(direct_transform(f, xi)) + std::abs(direct_transform(f, -xi)) >
               1e-9 * scale)
        xi *= 1.5;
    return 1.25 * xi;
}

// coth(y) - 1/y, smooth and odd, ->  sgn(y) at infinity.
double coth_minus_pole(double y) {
    if (std::abs(y) < 1e-4) return y / 3.0 - y * y * y / 45.0;
    if (std::abs(y) > 350.0) return (y > 0 ? 1.0 : -1.0) - 1.0 / y;
    return 1.0 / std::tanh(y) - 1.0 / y;
}

std::vector<cplx> fourier_side(const LineSampledFunction& f, const std::vector<double>& x,
                               bool hilbert, double delta) {
    check_uniform(f);
    const double ximax = detect_band(f);
    // fixed composite Simpson lattice in xi, shared across evaluation points
    const double target_dxi = 0.004;
    std::size_t panels = static_cast<std::size_t>(std::ceil(ximax / target_dxi));
    if (panels % 2 == 1) ++panels;
    const double dxi = ximax / static_cast<double>(panels);

    std::vector<cplx> fp(panels + 1), fm(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
        const double xi = dxi * static_cast<double>(i);
        fp[i] = direct_transform(f, xi);
        fm[i] = direct_transform(f, -xi);
    }
    const cplx fhat0 = fp[0];
    const cplx fhat_d0 = direct_transform_deriv0(f);

    std::vector<cplx> out(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        const double xv = x[q];
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i <= panels; ++i) {
            const double xi = dxi * static_cast<double>(i);
            const cplx gp = std::polar(1.0, xv * xi) * fp[i];
            const cplx gm = std::polar(1.0, -xv * xi) * fm[i];
            cplx integrand;
            if (hilbert) {
                integrand = gp - gm;  // sgn(xi) symmetrized
            } else if (i == 0) {
                // limit of (g(xi)-g(-xi))/(delta xi) + smooth part (=0 at 0)
                integrand = 2.0 * (cplx(0.0, xv) * fhat0 + fhat_d0) / delta;
            } else {
                integrand = (gp - gm) * (1.0 / (delta * xi) + coth_minus_pole(delta * xi));
            }
            const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * integrand;
        }
        acc *= dxi / 3.0;
        out[q] = cplx(0.0, -1.0) / (2.0 * M_PI) * acc;
    }
    return out;
}

}  // namespace

LineSampledFunction LineSampledFunction::sample(double R, std::size_t count,
                                                const std::function<cplx(double)>& f) {
    if (count < 16 || !(R > 0.0))
        throw std::invalid_argument("LineSampledFunction::sample: bad window");
    LineSampledFunction out;
    out.nodes.resize(count);
    out.values.resize(count);
    const double h = 2.0 * R / static_cast<double>(count - 1);
    double support = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        out.nodes[j] = -R + h * static_cast<double>(j);
        out.values[j] = f(out.nodes[j]);
        if (std::abs(out.values[j]) >= 1e-14)
            support = std::max(support, std::abs(out.nodes[j]));
    }
    out.support_radius = support;
    if (!(out.support_radius < R))
        throw std::invalid_argument(
            "LineSampledFunction::sample: function does not vanish inside the window");
    return out;
}

double snap_to_lattice(const LineSampledFunction& f, double x) {
    return f.nodes[snap_index(f, x)];
}

std::vector<cplx> kernel_Tdelta_pv(const LineSampledFunction& f, double delta,
                                   const std::vector<double>& x) {
    if (!(delta > 0.0)) throw std::invalid_argument("kernel_Tdelta_pv: delta must be positive");
    const double a = M_PI / (2.0 * delta);
    return pv_kernel(f, x, [a, delta](double s) { return 1.0 / (2.0 * delta * std::tanh(a * s)); });
}

std::vector<cplx> kernel_hilbert_pv(const LineSampledFunction& f,
                                    const std::vector<double>& x) {
    return pv_kernel(f, x, [](double s) { return 1.0 / (M_PI * s); });
}

namespace {

// coth(pi s / 2 delta)/(2 delta) - 1/(pi s): the smooth odd remainder after
// the pole is split off.
double coth_kernel_smooth(double delta, double s) {
    const double a = M_PI / (2.0 * delta);
    const double as = a * s;
    if (std::abs(as) < 1e-4) return (as / 3.0 - as * as * as / 45.0) / (2.0 * delta);
    return 1.0 / std::tanh(as) / (2.0 * delta) - 1.0 / (M_PI * s);
}

// (coth(pi s / 2 delta) - sgn(s)) / (2 delta): the plateau-free remainder,
// decaying like e^{-pi |s| / delta}; used for the kernel images. An image
// argument can hit 0 only where the samples vanish (wrapped rim), so it is
// safe to return 0 there.
double coth_kernel_tail(double delta, double s) {
    if (std::abs(s) < 1e-9) return 0.0;
    const double y = M_PI * std::abs(s) / delta;
    const double sgn = (s > 0.0) ? 1.0 : -1.0;
    const double rem = (y > 700.0) ? 0.0 : 2.0 / std::expm1(y);
    return sgn * rem / (2.0 * delta);
}

}  // namespace

std::vector<cplx> kernel_Tdelta_pv_periodic(const LineSampledFunction& f, double delta,
                                            double box_length,
                                            const std::vector<double>& x) {
    if (!(delta > 0.0))
        throw std::invalid_argument("kernel_Tdelta_pv_periodic: delta must be positive");
    if (!(box_length >= 2.0 * f.window()))
        throw std::invalid_argument(
            "kernel_Tdelta_pv_periodic: sample window must fit inside one period");
    const double L = box_length;
    // The sgn plateau of coth periodizes to the mean-free sawtooth
    // sgn(s) - 2s/L, hence the linear term; the plateau-free remainder decays
    // like e^{-pi|s|/delta}, so two images per side reach roundoff. The
    // resulting kernel reproduces the sampled multiplier at every nonzero box
    // frequency and is mean-free, matching the grid's zero-mode convention.
    return pv_kernel(
        f, x,
        [delta, L](double s) {
            double k = 1.0 / (M_PI * s) + coth_kernel_smooth(delta, s) - s / (delta * L);
            for (int m : {-2, -1, 1, 2})
                k += coth_kernel_tail(delta, s + static_cast<double>(m) * L);
            return k;
        },
        /*allow_edge=*/true);
}

std::vector<cplx> line_multiplier_Tdelta(const LineSampledFunction& f, double delta,
                                         const std::vector<double>& x) {
    if (!(delta > 0.0))
        throw std::invalid_argument("line_multiplier_Tdelta: delta must be positive");
    return fourier_side(f, x, false, delta);
}

std::vector<cplx> line_multiplier_hilbert(const LineSampledFunction& f,
                                          const std::vector<double>& x) {
    return fourier_side(f, x, true, 1.0);
}

TransformCheck tanh_fourier_check(double xi) {
    if (std::abs(xi) < 1e-3)
        throw std::invalid_argument("tanh_fourier_check: |xi| below principal-value floor");
    TransformCheck out;
    // tanh(x/2) - 1 = -2 e^{-x} / (1 + e^{-x}), absolutely integrable
    const double tail = adaptive(
        [xi](double t) {
            const double e = std::exp(-t);
            return -2.0 * e / (1.0 + e) * std::sin(t * xi);
        },
        0.0, 80.0);
    out.numeric = cplx(0.0, -2.0) * (tail + 1.0 / xi);  // Abel term int_0^inf sin = 1/xi
    out.closed_form = cplx(0.0, -2.0 * M_PI / std::sinh(M_PI * xi));
    return out;
}

TransformCheck coth_fourier_check(double xi) {
    if (std::abs(xi) < 1e-3)
        throw std::invalid_argument("coth_fourier_check: |xi| below principal-value floor");
    TransformCheck out;
    const auto tanh_part = tanh_fourier_check(xi);
    // Damped pole subtraction: cosech(x) - e^{-x}/x is smooth (-> 1 at 0) and
    // decays exponentially, so the truncated quadrature converges absolutely;
    // the subtracted piece integrates in closed form,
    // int_0^inf e^{-x} sin(x xi)/x dx = arctan(xi). A bare 1/x subtraction
    // would leave a conditionally convergent sin(x xi)/x tail that truncation
    // cannot reach at the required tolerance.
    const double tail = adaptive(
        [xi](double t) {
            double c;
            if (t < 1e-4) c = 1.0 - 2.0 * t / 3.0 + t * t / 6.0;
            else c = 1.0 / std::sinh(t) - std::exp(-t) / t;
            return c * std::sin(t * xi);
        },
        0.0, 80.0);
    const cplx cosech_part = cplx(0.0, -2.0) * (tail + std::atan(xi));
    out.numeric = tanh_part.numeric + cosech_part;
    out.closed_form = cplx(0.0, -M_PI / std::tanh(M_PI * xi / 2.0));
    const double y = M_PI * xi / 2.0;
    out.identity_residual =
        std::abs(2.0 / std::sinh(2.0 * y) + std::tanh(y) - 1.0 / std::tanh(y));
    return out;
}

HyperbolicResiduals hyperbolic_identity_suite(double x) {
    if (x == 0.0) throw std::invalid_argument("hyperbolic_identity_suite: x must be nonzero");
    const double coth = 1.0 / std::tanh(x);
    const double coth_half = 1.0 / std::tanh(0.5 * x);
    const double cosech = 1.0 / std::sinh(x);
    const double scale = std::max(1.0, std::abs(coth));
    HyperbolicResiduals r;
    r.coth_split = std::abs(coth - std::tanh(0.5 * x) - cosech) / scale;
    r.half_angle = std::abs(cosech + coth - coth_half) / scale;
    return r;
}

}  // namespace oracle
}  // namespace ginls
