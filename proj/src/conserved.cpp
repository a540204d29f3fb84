#include "ginls/conserved.hpp"

#include <cmath>
#include <stdexcept>

#include "ginls/symbols.hpp"

namespace ginls {

namespace {

using dvec = std::vector<double>;
using cvec = std::vector<cplx>;

// Apply a (real, even) multiplier table to real samples; result is real.
dvec apply_real(const GridSpec& g, const dvec& w, const cvec& sym) {
    const std::size_t n = g.size();
    cvec a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = w[j];
    g.fft().forward(a.data(), b.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) b[m] *= sym[m] * inv;
    g.fft().backward(b.data(), a.data());
    dvec out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j].real();
    return out;
}

double quad(const GridSpec& g, const dvec& density) {
    double s = 0.0;
    for (double v : density) s += v;
    return s * g.dx();
}

// Everything the functionals consume, computed once per state.
struct Pieces {
    const GridSpec& g;
    double rho, alpha, beta;
    cvec u, du, d2u;
    dvec w, wdev, dw, ddw, imq, abs_du2, abs_d2u2, tq;
    cvec nonlocal_sym, deriv1_sym;

    Pieces(const FieldState& f, const ModelParams& p) : g(*f.grid) {
        p.validate();
        rho = f.rho;
        alpha = p.alpha;
        beta = p.beta;
        const std::size_t n = g.size();

        deriv1_sym = symbol_deriv(f.grid, 1).values;
        nonlocal_sym = (p.nonlocal == NonlocalKind::TDelta)
                           ? symbol_Tdelta_dx(f.grid, p.delta).values
                           : symbol_hilbert_dx(f.grid).values;

        u = f.values;
        du = apply_symbol(f, symbol_deriv(f.grid, 1)).values;
        d2u = apply_symbol(f, symbol_deriv(f.grid, 2)).values;

        w.resize(n); wdev.resize(n); imq.resize(n); abs_du2.resize(n); abs_d2u2.resize(n);
        const double r2 = rho * rho;
        for (std::size_t j = 0; j < n; ++j) {
            w[j] = std::norm(u[j]);
            wdev[j] = w[j] - r2;
            imq[j] = std::imag(std::conj(u[j]) * du[j]);
            abs_du2[j] = std::norm(du[j]);
            abs_d2u2[j] = std::norm(d2u[j]);
        }
        dw = apply_real(g, w, deriv1_sym);
        ddw = apply_real(g, w, symbol_deriv(f.grid, 2).values);
        tq = apply_real(g, wdev, nonlocal_sym);
    }

    dvec nonlocal(const dvec& v) const { return apply_real(g, v, nonlocal_sym); }
    dvec dx1(const dvec& v) const { return apply_real(g, v, deriv1_sym); }
};

std::array<double, 4> correctors_H1(const Pieces& P) {
    const std::size_t n = P.g.size();
    dvec d1(n), d2(n), d3(n), d4(n);
    for (std::size_t j = 0; j < n; ++j) {
        d1[j] = P.wdev[j] * P.imq[j];
        d2[j] = P.wdev[j] * P.tq[j];
        d3[j] = P.wdev[j] * P.wdev[j] * P.wdev[j];
        d4[j] = P.wdev[j] * P.wdev[j];
    }
    return {quad(P.g, d1), quad(P.g, d2), quad(P.g, d3), quad(P.g, d4)};
}

double H1_of(const Pieces& P) {
    const auto I = correctors_H1(P);
    return quad(P.g, P.abs_du2) + P.alpha * I[0] + 0.5 * P.beta * I[1] +
           (P.alpha * P.alpha / 3.0) * I[2] + 0.5 * P.alpha * P.alpha * P.rho * P.rho * I[3];
}

std::array<double, 5> correctors_H2(const Pieces& P) {
    const std::size_t n = P.g.size();
    const dvec t_imq = P.nonlocal(P.imq);
    dvec d1(n), d2(n), d3(n), d4(n), d5(n);
    for (std::size_t j = 0; j < n; ++j) {
        d1[j] = P.abs_du2[j] * P.imq[j];
        d2[j] = P.ddw[j] * P.imq[j];
        d3[j] = P.abs_du2[j] * P.tq[j];
        d4[j] = P.ddw[j] * P.tq[j];
        d5[j] = P.imq[j] * t_imq[j];
    }
    return {quad(P.g, d1), quad(P.g, d2), quad(P.g, d3), quad(P.g, d4), quad(P.g, d5)};
}

double H2_of(const Pieces& P) {
    const auto I = correctors_H2(P);
    return quad(P.g, P.abs_d2u2) + 2.0 * P.alpha * I[0] - 3.0 * P.alpha * I[1] +
           2.0 * P.beta * I[2] - 0.75 * P.beta * I[3] + P.beta * I[4];
}

double H2_inls_of(const Pieces& P) {
    const std::size_t n = P.g.size();
    const double a = P.alpha, b = P.beta, r2 = P.rho * P.rho;
    const double r4 = r2 * r2, r6 = r4 * r2;
    dvec w2dev(n), w3dev(n);
    for (std::size_t j = 0; j < n; ++j) {
        w2dev[j] = P.w[j] * P.w[j] - r4;
        w3dev[j] = P.w[j] * P.w[j] * P.w[j] - r6;
    }
    const dvec tq2 = P.nonlocal(w2dev);
    dvec extra(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = P.w[j];
        extra[j] = 2.0 * a * a * w * w * P.abs_du2[j] +
                   a * a * w * (1.5 * P.dw[j] * P.dw[j] + 0.5 * P.tq[j] * P.tq[j]) +
                   a * b * P.imq[j] * (2.0 * w * P.tq[j] + tq2[j]) +
                   a * a * w3dev[j] * (a * P.imq[j] + (2.0 / 3.0) * b * P.tq[j]) +
                   0.25 * a * a * b * w2dev[j] * tq2[j] +
                   a * a * a * a *
                       (0.2 * w * w * w + 0.4 * r2 * w * w + 0.6 * r4 * w + 0.3 * r6) *
                       P.wdev[j] * P.wdev[j];
    }
    return H2_of(P) + quad(P.g, extra);
}

}  // namespace

double functional_H1(const FieldState& f, const ModelParams& p) {
    return H1_of(Pieces(f, p));
}

double functional_H2(const FieldState& f, const ModelParams& p) {
    return H2_of(Pieces(f, p));
}

double functional_H2_inls(const FieldState& f, const ModelParams& p) {
    if (!integrable_params(p))
        throw std::invalid_argument("functional_H2_inls: requires beta = ±|alpha| != 0");
    return H2_inls_of(Pieces(f, p));
}

double renormalized_mass(const FieldState& f) {
    const double r2 = f.rho * f.rho;
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v) - r2;
    return s * f.grid->dx();
}

double hierarchy_E(const FieldState& f, const ModelParams& p, HierarchyLevel level) {
    Pieces P(f, p);
    const std::size_t n = P.g.size();
    dvec d(n);
    switch (level) {
        case HierarchyLevel::E0:
            return quad(P.g, P.w);
        case HierarchyLevel::EHalf:
            for (std::size_t j = 0; j < n; ++j)
                d[j] = P.imq[j] + 0.5 * P.w[j] * P.w[j];
            return quad(P.g, d);
        case HierarchyLevel::E1:
            for (std::size_t j = 0; j < n; ++j)
                d[j] = P.abs_du2[j] + P.w[j] * P.imq[j] + 0.5 * P.w[j] * P.tq[j] +
                       P.w[j] * P.w[j] * P.w[j] / 3.0;
            return quad(P.g, d);
        case HierarchyLevel::E3Half: {
            for (std::size_t j = 0; j < n; ++j) {
                const double w2 = P.w[j] * P.w[j];
                d[j] = std::imag(std::conj(P.du[j]) * P.d2u[j]) +
                       0.5 * P.dw[j] * P.dw[j] + 1.5 * P.w[j] * P.abs_du2[j] +
                       1.5 * P.imq[j] * P.tq[j] +
                       w2 * (P.imq[j] + 0.75 * P.tq[j]) + 0.25 * w2 * w2;
            }
            return quad(P.g, d);
        }
        case HierarchyLevel::E2: {
            dvec w2(n);
            for (std::size_t j = 0; j < n; ++j) w2[j] = P.w[j] * P.w[j];
            const dvec t_imq = P.nonlocal(P.imq);
            const dvec t_w2 = P.nonlocal(w2);
            for (std::size_t j = 0; j < n; ++j) {
                const double w = P.w[j], w3 = w * w * w;
                d[j] = P.abs_d2u2[j] +
                       (2.0 * P.abs_du2[j] - 3.0 * P.ddw[j]) * P.imq[j] +
                       (2.0 * P.abs_du2[j] - 0.75 * P.ddw[j]) * P.tq[j] +
                       P.imq[j] * t_imq[j] + 2.0 * w2[j] * P.abs_du2[j] +
                       w * (1.5 * P.dw[j] * P.dw[j] + 0.5 * P.tq[j] * P.tq[j]) +
                       P.imq[j] * (2.0 * w * P.tq[j] + t_w2[j]) +
                       w3 * (P.imq[j] + (2.0 / 3.0) * P.tq[j]) +
                       0.25 * w2[j] * t_w2[j] + 0.2 * w3 * w2[j];
            }
            return quad(P.g, d);
        }
    }
    throw std::invalid_argument("hierarchy_E: unknown level");
}

FunctionalReport functional_report(const FieldState& f, const ModelParams& p) {
    Pieces P(f, p);
    FunctionalReport r;
    r.correctors1 = correctors_H1(P);
    r.correctors2 = correctors_H2(P);
    r.H1 = H1_of(P);
    r.H2 = H2_of(P);
    if (integrable_params(p)) r.H2_inls = H2_inls_of(P);
    r.mass_renorm = renormalized_mass(f);
    r.hierarchy = {hierarchy_E(f, p, HierarchyLevel::E0),
                   hierarchy_E(f, p, HierarchyLevel::EHalf),
                   hierarchy_E(f, p, HierarchyLevel::E1),
                   hierarchy_E(f, p, HierarchyLevel::E3Half),
                   hierarchy_E(f, p, HierarchyLevel::E2)};
    return r;
}

std::array<double, 4> tderiv_identity_residuals(const Trajectory& traj) {
    const auto& st = traj.states;
    if (st.size() < 3)
        throw std::invalid_argument("tderiv_identity_residuals: need >= 3 records");
    const double spacing = st[1].time - st[0].time;
    for (std::size_t i = 1; i < st.size(); ++i)
        if (std::abs(st[i].time - st[i - 1].time - spacing) >
            1e-9 * std::max(1.0, std::abs(spacing)))
            throw std::invalid_argument("tderiv_identity_residuals: non-uniform records");

    const GridSpec& g = *st[0].grid;
    const std::size_t n = g.size();
    const ModelParams& p = traj.params;

    struct Slice {
        dvec D1, D2, D3, D4;          // densities
        dvec R1, R2, R3, R4;          // spatial sides
    };
    auto build = [&](const FieldState& f) {
        Pieces P(f, p);
        const cvec d3u = apply_symbol(f, symbol_deriv(f.grid, 3)).values;
        const dvec dddw = apply_real(g, P.w, symbol_deriv(f.grid, 3).values);
        const dvec d_abs_du2 = P.dx1(P.abs_du2);
        const dvec d_imq = P.dx1(P.imq);
        const dvec t_dw = P.dx1(P.tq);            // Td_x^2 (|u|^2)
        const dvec t_ddw = P.dx1(t_dw);           // Td_x^3 (|u|^2)

        Slice s;
        s.D1 = P.w;
        s.D2 = P.abs_du2;
        s.D3 = P.abs_d2u2;
        s.D4 = P.imq;

        dvec flux1(n), flux2(n), flux3(n), im_dud2u(n);
        for (std::size_t j = 0; j < n; ++j) {
            flux1[j] = 2.0 * P.imq[j] + p.alpha * P.w[j] * P.w[j];
            im_dud2u[j] = std::imag(std::conj(P.du[j]) * P.d2u[j]);
            flux2[j] = 2.0 * im_dud2u[j] + 0.5 * p.alpha * P.dw[j] * P.dw[j];
            flux3[j] = 2.0 * std::imag(std::conj(P.d2u[j]) * d3u[j]) +
                       0.5 * p.alpha * P.ddw[j] * P.ddw[j];
        }
        const dvec dflux1 = P.dx1(flux1);
        const dvec dflux2 = P.dx1(flux2);
        const dvec dflux3 = P.dx1(flux3);

        s.R1 = dflux1;
        s.R2.resize(n); s.R3.resize(n); s.R4.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            s.R2[j] = dflux2[j] + 2.0 * p.alpha * P.abs_du2[j] * P.dw[j] +
                      2.0 * p.beta * P.imq[j] * t_dw[j];
            s.R3[j] = dflux3[j] + 2.0 * p.alpha * P.abs_d2u2[j] * P.dw[j] +
                      2.0 * p.alpha * d_abs_du2[j] * P.ddw[j] -
                      2.0 * p.alpha * P.abs_du2[j] * dddw[j] +
                      4.0 * p.beta * im_dud2u[j] * t_dw[j] +
                      2.0 * p.beta * d_imq[j] * t_ddw[j];
            s.R4[j] = 2.0 * d_abs_du2[j] - 0.5 * dddw[j] +
                      2.0 * p.alpha * P.imq[j] * P.dw[j] + p.beta * P.w[j] * t_dw[j];
        }
        return s;
    };

    std::vector<Slice> slices;
    slices.reserve(st.size());
    for (const auto& f : st) slices.push_back(build(f));

    std::array<double, 4> res{0.0, 0.0, 0.0, 0.0};
    auto l2 = [&](const dvec& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s * g.dx());
    };
    dvec diff(n);
    for (std::size_t i = 1; i + 1 < slices.size(); ++i) {
        const double inv2h = 0.5 / spacing;
        auto check = [&](const dvec& Dm, const dvec& Dp, const dvec& R, double& out) {
            for (std::size_t j = 0; j < n; ++j)
                diff[j] = (Dp[j] - Dm[j]) * inv2h - R[j];
            out = std::max(out, l2(diff));
        };
        check(slices[i - 1].D1, slices[i + 1].D1, slices[i].R1, res[0]);
        check(slices[i - 1].D2, slices[i + 1].D2, slices[i].R2, res[1]);
        check(slices[i - 1].D3, slices[i + 1].D3, slices[i].R3, res[2]);
        check(slices[i - 1].D4, slices[i + 1].D4, slices[i].R4, res[3]);
    }
    return res;
}

double imim_identity_residual(const FieldState& f) {
    ModelParams p;  // derivatives only; operator params are irrelevant here
    p.rho = f.rho;
    Pieces P(f, p);
    const std::size_t n = P.g.size();
    const dvec d_imq = P.dx1(P.imq);
    const dvec d_abs_du2 = P.dx1(P.abs_du2);
    dvec lhs(n), rhs1(n), rhs2(n);
    for (std::size_t j = 0; j < n; ++j) {
        lhs[j] = std::imag(std::conj(P.du[j]) * P.d2u[j]) * d_imq[j];
        rhs1[j] = P.abs_d2u2[j] * P.dw[j];
        rhs2[j] = d_abs_du2[j] * P.ddw[j];
    }
    return std::abs(quad(P.g, lhs) - 0.5 * quad(P.g, rhs1) + 0.25 * quad(P.g, rhs2));
}

}  // namespace ginls
