#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ginls/conserved.hpp"
#include "ginls/oracle.hpp"
#include "ginls/zhidkov.hpp"

using namespace ginls;

namespace {

ModelParams params(double alpha, double beta, double delta = 1.0, double rho = 1.0) {
    ModelParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.delta = delta;
    p.rho = rho;
    return p;
}

// Analytic nonvanishing test datum: u = rho + a sech(x/w) + i b sech(x/w) tanh(x/w),
// with closed-form derivatives for the transform-free oracle.
struct BumpDatum {
    double rho = 1.0, a = 0.35, b = 0.2, w = 1.2;

    cplx u(double x) const {
        const double S = 1.0 / std::cosh(x / w), T = std::tanh(x / w);
        return {rho + a * S, b * S * T};
    }
    cplx du(double x) const {
        const double S = 1.0 / std::cosh(x / w), T = std::tanh(x / w);
        return {-(a / w) * S * T, (b / w) * S * (S * S - T * T)};
    }
    cplx d2u(double x) const {
        const double S = 1.0 / std::cosh(x / w), T = std::tanh(x / w);
        return {(a / (w * w)) * S * (T * T - S * S),
                (b / (w * w)) * S * T * (T * T - 5.0 * S * S)};
    }
};

// Transform-free evaluation of H1 / H2 / H2_inls on the analytic datum:
// closed-form derivatives, the torus principal-value kernel for every
// T_delta d/dx factor, and the periodic trapezoid rule over the full box —
// the exact functional of the periodized problem, no FFT anywhere.
struct BumpOracle {
    BumpDatum d;
    double delta;
    double h = 0.01;
    double boxL = 96.0;
    double R = 48.0;  // one full period; the datum's tails are below 1e-14 there
    std::vector<double> x;        // the 2R/h distinct circle nodes
    std::vector<double> wv, wdev, dw, imq, abs_du2, abs_d2u2, ddw;
    std::vector<double> tq, t_imq, tq2;

    double integrate(const std::vector<double>& density) const {
        double s = 0.0;
        for (double v : density) s += v;
        return s * h;
    }

    explicit BumpOracle(const BumpDatum& datum, double dlt) : d(datum), delta(dlt) {
        const auto n_samples = static_cast<std::size_t>(std::lround(2.0 * R / h)) + 1;
        auto sampled = [&](auto fn) {
            return oracle::LineSampledFunction::sample(
                R, n_samples, [&](double xx) { return cplx(fn(xx), 0.0); });
        };

        const auto ni = static_cast<std::size_t>(std::lround(2.0 * R / h));
        x.resize(ni);
        for (std::size_t i = 0; i < ni; ++i) x[i] = -R + h * static_cast<double>(i);

        auto fill = [&](auto fn) {
            std::vector<double> out(ni);
            for (std::size_t i = 0; i < ni; ++i) out[i] = fn(x[i]);
            return out;
        };
        auto w_of = [&](double xx) { return std::norm(d.u(xx)); };
        auto dw_of = [&](double xx) {
            return 2.0 * std::real(std::conj(d.u(xx)) * d.du(xx));
        };
        auto ddw_of = [&](double xx) {
            return 2.0 * (std::norm(d.du(xx)) + std::real(std::conj(d.u(xx)) * d.d2u(xx)));
        };
        auto imq_of = [&](double xx) {
            return std::imag(std::conj(d.u(xx)) * d.du(xx));
        };
        auto dimq_of = [&](double xx) {
            return std::imag(std::conj(d.u(xx)) * d.d2u(xx));
        };
        auto dw2_of = [&](double xx) { return 2.0 * w_of(xx) * dw_of(xx); };

        wv = fill(w_of);
        dw = fill(dw_of);
        ddw = fill(ddw_of);
        imq = fill(imq_of);
        wdev.resize(ni);
        abs_du2.resize(ni);
        abs_d2u2.resize(ni);
        for (std::size_t i = 0; i < ni; ++i) {
            wdev[i] = wv[i] - d.rho * d.rho;
            abs_du2[i] = std::norm(d.du(x[i]));
            abs_d2u2[i] = std::norm(d.d2u(x[i]));
        }

        // T_delta d/dx g realized as the torus p.v. kernel applied to g'
        auto kern = [&](auto deriv_fn) {
            const auto samples = sampled(deriv_fn);
            const auto vals = oracle::kernel_Tdelta_pv_periodic(samples, delta, boxL, x);
            std::vector<double> out(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].real();
            return out;
        };
        tq = kern(dw_of);
        t_imq = kern(dimq_of);
        tq2 = kern(dw2_of);
    }

    double H1(double alpha, double beta) const {
        std::vector<double> dens(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            dens[i] = abs_du2[i] + alpha * wdev[i] * imq[i] +
                      0.5 * beta * wdev[i] * tq[i] +
                      alpha * alpha * (wv[i] / 3.0 + d.rho * d.rho / 6.0) * wdev[i] * wdev[i];
        return integrate(dens);
    }

    double H2(double alpha, double beta) const {
        std::vector<double> dens(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            dens[i] = abs_d2u2[i] +
                      alpha * (2.0 * abs_du2[i] - 3.0 * ddw[i]) * imq[i] +
                      beta * (2.0 * abs_du2[i] - 0.75 * ddw[i]) * tq[i] +
                      beta * imq[i] * t_imq[i];
        return integrate(dens);
    }

    double H2_inls(double alpha, double beta) const {
        const double r2 = d.rho * d.rho, r4 = r2 * r2, r6 = r4 * r2;
        std::vector<double> dens(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double w = wv[i];
            dens[i] = 2.0 * alpha * alpha * w * w * abs_du2[i] +
                      alpha * alpha * w * (1.5 * dw[i] * dw[i] + 0.5 * tq[i] * tq[i]) +
                      alpha * beta * imq[i] * (2.0 * w * tq[i] + tq2[i]) +
                      alpha * alpha * (w * w * w - r6) *
                          (alpha * imq[i] + (2.0 / 3.0) * beta * tq[i]) +
                      0.25 * alpha * alpha * beta * (w * w - r4) * tq2[i] +
                      std::pow(alpha, 4) *
                          (0.2 * w * w * w + 0.4 * r2 * w * w + 0.6 * r4 * w + 0.3 * r6) *
                          wdev[i] * wdev[i];
        }
        return H2(alpha, beta) + integrate(dens);
    }
};

FieldState bump_on_grid(const BumpDatum& d, const GridPtr& g) {
    FieldState f = make_field(g, d.rho);
    for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] = d.u(g->node(j));
    return f;
}

}  // namespace

TEST_CASE("functionals vanish on the flat state") {
    auto g = make_grid(256, 8.0 * M_PI);
    const auto p = params(1.0, 1.0);
    auto c = initial_constant(g, 1.3);
    CHECK(std::abs(functional_H1(c, p)) < 1e-12);
    CHECK(std::abs(functional_H2(c, p)) < 1e-12);
    CHECK(std::abs(functional_H2_inls(c, p)) < 1e-12);
    CHECK(std::abs(renormalized_mass(c)) < 1e-12);
}

TEST_CASE("plane-wave closed forms") {
    const double rho = 1.1, L = 2.0 * M_PI;
    const int k = 3;
    auto g = make_grid(256, L);
    auto pw = initial_plane_wave(g, rho, k);
    const double r2 = rho * rho;

    const auto p = params(1.0, 1.0, 1.0, rho);
    CHECK(functional_H1(pw, p) == doctest::Approx(r2 * k * k * L).epsilon(1e-12));
    // surviving terms: |u_xx|^2 and 2 alpha |u_x|^2 Im[conj(u) u_x]
    const double h2_want = r2 * std::pow(k, 4) * L + 2.0 * r2 * r2 * std::pow(k, 3) * L;
    CHECK(functional_H2(pw, p) == doctest::Approx(h2_want).epsilon(1e-12));
    // in the integrable completion 2 alpha^2 |u|^4 |u_x|^2 also survives
    const double h2i_want = h2_want + 2.0 * std::pow(rho, 6) * k * k * L;
    CHECK(functional_H2_inls(pw, p) == doctest::Approx(h2i_want).epsilon(1e-12));
    CHECK(std::abs(renormalized_mass(pw)) < 1e-12);

    CHECK_THROWS_AS(functional_H2_inls(pw, params(1.0, 0.4, 1.0, rho)),
                    std::invalid_argument);
}

TEST_CASE("grid functionals agree with the transform-free oracle") {
    BumpDatum d;
    auto g = make_grid(4096, 96.0);
    auto f = bump_on_grid(d, g);
    BumpOracle orc(d, 1.0);

    for (auto [alpha, beta] : {std::pair{1.0, 1.0}, std::pair{0.8, 0.6}}) {
        const auto p = params(alpha, beta, 1.0, d.rho);
        const double h1g = functional_H1(f, p), h1o = orc.H1(alpha, beta);
        CHECK(std::abs(h1g - h1o) <= 1e-8 * std::max(1.0, std::abs(h1o)));
        const double h2g = functional_H2(f, p), h2o = orc.H2(alpha, beta);
        CHECK(std::abs(h2g - h2o) <= 1e-8 * std::max(1.0, std::abs(h2o)));
    }
    const auto p11 = params(1.0, 1.0, 1.0, d.rho);
    const double hio = orc.H2_inls(1.0, 1.0);
    CHECK(std::abs(functional_H2_inls(f, p11) - hio) <= 1e-8 * std::max(1.0, std::abs(hio)));
}

TEST_CASE("renormalized mass of the grey pair") {
    const double theta = 0.3, rho = 1.0;
    auto g = make_grid(2048, 16.0 * M_PI);
    auto gp = initial_grey_pair(g, rho, theta, g->length() / 4);
    const double want = -4.0 * rho * std::cos(theta);
    CHECK(renormalized_mass(gp) == doctest::Approx(want).epsilon(1e-8));
    CHECK(renormalized_mass(gp) < 0.0);
}

TEST_CASE("hierarchy closed forms on flat and plane-wave states") {
    const double rho = 1.2, L = 2.0 * M_PI;
    auto g = make_grid(256, L);
    const auto p = params(1.0, 1.0, 1.0, rho);
    auto c = initial_constant(g, rho);
    CHECK(hierarchy_E(c, p, HierarchyLevel::E0) ==
          doctest::Approx(rho * rho * L).epsilon(1e-13));
    CHECK(hierarchy_E(c, p, HierarchyLevel::E1) ==
          doctest::Approx(std::pow(rho, 6) * L / 3.0).epsilon(1e-13));

    const int k = 2;
    auto pw = initial_plane_wave(g, rho, k);
    CHECK(hierarchy_E(pw, p, HierarchyLevel::EHalf) ==
          doctest::Approx(rho * rho * k * L + 0.5 * std::pow(rho, 4) * L).epsilon(1e-12));
}

TEST_CASE("functional report coherence") {
    auto g = make_grid(512, 16.0 * M_PI);
    auto f = initial_grey_pair(g, 1.0, 0.4, g->length() / 5);
    const auto pi = params(1.0, 1.0);
    auto rep = functional_report(f, pi);
    CHECK(rep.H1 == doctest::Approx(functional_H1(f, pi)));
    CHECK(rep.H2 == doctest::Approx(functional_H2(f, pi)));
    REQUIRE(rep.H2_inls.has_value());
    CHECK(*rep.H2_inls == doctest::Approx(functional_H2_inls(f, pi)));
    // H1 reassembles from its correctors
    const auto& I = rep.correctors1;
    FieldState du = apply_symbol(f, symbol_deriv(g, 1));
    const double du2 = l2_norm(du) * l2_norm(du);
    CHECK(rep.H1 == doctest::Approx(du2 + I[0] + 0.5 * I[1] + I[2] / 3.0 + 0.5 * I[3])
                        .epsilon(1e-10));

    auto rep2 = functional_report(f, params(1.0, 0.5));
    CHECK(!rep2.H2_inls.has_value());
}

TEST_CASE("pointwise identity of the two Im-products") {
    auto g = make_grid(256, 8.0 * M_PI);
    CHECK(imim_identity_residual(initial_constant(g, 1.0)) < 1e-12);
    CHECK(imim_identity_residual(initial_plane_wave(g, 1.0, 3)) < 1e-10);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto f = initial_random_band(g, 1.0, 100 + s, static_cast<int>(g->size() / 8), 0.3);
        const double scale =
            std::max(1.0, dx2_norm(f) * dx2_norm(f) * deriv_sobolev_norm(f, 1));
        CHECK(imim_identity_residual(f) <= 1e-8 * scale);
    }
}

TEST_CASE("time-derivative identities along trajectories") {
    auto g = make_grid(256, 8.0 * M_PI);

    // flat state: both sides vanish
    auto flat = evolve(initial_constant(g, 1.0), 0.1, 1e-3, params(1.0, 1.0), 10);
    REQUIRE(!flat.failed);
    for (double r : tderiv_identity_residuals(flat)) CHECK(r < 1e-12);

    // linear flow (alpha = beta = 0): residual is pure centered-difference error,
    // so halving the recording interval divides it by about four
    auto f0 = initial_random_band(g, 1.0, 17, 16, 0.2);
    const auto pfree = params(0.0, 0.0);
    const double dt = 1e-4;
    auto coarse = evolve(f0, 0.2, dt, pfree, 200);
    auto fine = evolve(f0, 0.2, dt, pfree, 100);
    REQUIRE(!coarse.failed);
    REQUIRE(!fine.failed);
    const auto rc = tderiv_identity_residuals(coarse);
    const auto rf = tderiv_identity_residuals(fine);
    for (int q = 0; q < 4; ++q) {
        if (rc[q] < 1e-12) continue;  // below roundoff, no order to measure
        const double ratio = rc[q] / rf[q];
        CHECK(ratio >= 2.8);
        CHECK(ratio <= 5.5);
    }

    // full nonlinear flow: same second-order shrink
    auto cn = evolve(f0, 0.2, dt, params(1.0, 1.0), 200);
    auto fn = evolve(f0, 0.2, dt, params(1.0, 1.0), 100);
    REQUIRE(!cn.failed);
    REQUIRE(!fn.failed);
    const auto rcn = tderiv_identity_residuals(cn);
    const auto rfn = tderiv_identity_residuals(fn);
    for (int q = 0; q < 4; ++q) {
        if (rcn[q] < 1e-12) continue;
        const double ratio = rcn[q] / rfn[q];
        CHECK(ratio >= 2.8);
        CHECK(ratio <= 5.5);
    }
}

TEST_CASE("coercivity of H1 with explicit constants") {
    auto g = make_grid(512, 16.0 * M_PI);
    std::vector<FieldState> fields = {
        initial_grey_pair(g, 1.0, 0.3, g->length() / 4),
        initial_bump(g, 1.0, 0.4, 1.2),
        initial_random_band(g, 1.0, 23, 40, 0.1),
        initial_plane_wave(g, 1.0, 1),
    };
    for (double alpha : {0.7, 1.0})
        for (double beta : {0.0, 0.5, 1.0})
            for (double delta : {0.5, 2.0})
                for (const auto& f : fields) {
                    const auto p = params(alpha, beta, delta, f.rho);
                    const double d = deriv_sobolev_norm(f, 1);
                    const double s = sq_dev_norm(f);
                    CHECK(functional_H1(f, p) >=
                          d * d / 6.0 +
                              alpha * alpha * f.rho * f.rho / 6.0 * s * s - 1e-10);
                }
}
