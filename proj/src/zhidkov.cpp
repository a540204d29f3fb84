#include "ginls/zhidkov.hpp"

#include <cmath>
#include <stdexcept>

#include "ginls/symbols.hpp"

namespace ginls {

double deriv_sobolev_norm(const FieldState& f, int k) {
    if (k < 1) throw std::invalid_argument("deriv_sobolev_norm: k must be >= 1");
    const auto c = modes(f);
    const auto& xi = f.grid->wavenumbers();
    double s = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
        const double x2 = xi[m] * xi[m];
        s += std::pow(1.0 + x2, k - 1) * x2 * std::norm(c[m]);
    }
    return std::sqrt(s * f.grid->length());
}

double dx2_norm(const FieldState& f) {
    const auto c = modes(f);
    const auto& xi = f.grid->wavenumbers();
    double s = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
        const double x2 = xi[m] * xi[m];
        s += x2 * x2 * std::norm(c[m]);
    }
    return std::sqrt(s * f.grid->length());
}

double sq_dev_norm(const FieldState& f) {
    const double r2 = f.rho * f.rho;
    double s = 0.0;
    for (const auto& v : f.values) {
        const double d = std::norm(v) - r2;
        s += d * d;
    }
    return std::sqrt(s * f.grid->dx());
}

double energy_Ek(const FieldState& f, int k) {
    const double h = deriv_sobolev_norm(f, k);
    const double m = linf_norm(f);
    return h * h + m * m + sq_dev_norm(f);
}

double dist_dk(const FieldState& f, const FieldState& g, int k) {
    if (!f.grid->same_as(*g.grid)) throw std::invalid_argument("dist_dk: grid mismatch");
    if (f.rho != g.rho) throw std::invalid_argument("dist_dk: rho mismatch");
    FieldState diff = f;
    double linf = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        diff.values[j] = f.values[j] - g.values[j];
        linf = std::max(linf, std::abs(diff.values[j]));
        const double d = std::norm(f.values[j]) - std::norm(g.values[j]);
        sq += d * d;
    }
    return deriv_sobolev_norm(diff, k) + linf + std::sqrt(sq * f.grid->dx());
}

double seam_gap(const FieldState& f) {
    const double edge = 0.45 * f.grid->length();
    double m = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        if (std::abs(f.grid->node(j)) >= edge)
            m = std::max(m, std::abs(std::abs(f.values[j]) - f.rho));
    }
    return m;
}

bool seam_check(const FieldState& f, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("seam_check: tol must be positive");
    return seam_gap(f) <= tol;
}

MetricsReport metrics_report(const FieldState& f, int k) {
    MetricsReport r;
    r.k = k;
    r.E1 = energy_Ek(f, 1);
    r.E2 = energy_Ek(f, 2);
    r.Ek = (k == 1) ? r.E1 : (k == 2 ? r.E2 : energy_Ek(f, k));
    r.linf = linf_norm(f);
    r.sq_dev = sq_dev_norm(f);
    r.seam_gap = seam_gap(f);
    return r;
}

std::vector<double> lp_block_deriv_h1(const FieldState& f) {
    const auto c = modes(f);
    const auto& xi = f.grid->wavenumbers();
    const int top = lp_top_level(*f.grid);
    std::vector<double> out(top + 1, 0.0);
    for (int j = 0; j <= top; ++j) {
        const double scale = std::ldexp(1.0, j);
        const double below = (j >= 1) ? std::ldexp(1.0, j - 1) : 0.0;
        double s = 0.0;
        for (std::size_t m = 0; m < c.size(); ++m) {
            double phi = lp_bump(xi[m] / scale);
            if (j >= 1) phi -= lp_bump(xi[m] / below);
            if (phi == 0.0) continue;
            const double x2 = xi[m] * xi[m];
            s += phi * phi * (1.0 + x2) * x2 * std::norm(c[m]);
        }
        out[j] = std::sqrt(s * f.grid->length());
    }
    return out;
}

EnvelopeSequence freq_envelope(const FieldState& f, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("freq_envelope: eps must lie in (0,1)");
    EnvelopeSequence env;
    env.eps = eps;
    env.block_norms = lp_block_deriv_h1(f);
    const double low = linf_norm(f) + std::sqrt(sq_dev_norm(f));
    const int top = static_cast<int>(env.block_norms.size()) - 1;
    env.values.assign(top + 1, 0.0);
    for (int j = 0; j <= top; ++j) {
        double c = std::pow(2.0, -eps * j) * low;
        for (int k = 0; k <= top; ++k)
            c += std::pow(2.0, -eps * std::abs(j - k)) * env.block_norms[k];
        env.values[j] = c;
    }
    return env;
}

}  // namespace ginls
