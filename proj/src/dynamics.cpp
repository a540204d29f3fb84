#include "ginls/dynamics.hpp"

#include <cmath>

#include "ginls/rng.hpp"
#include "ginls/zhidkov.hpp"

namespace ginls {

bool integrable_params(const ModelParams& p) {
    if (p.alpha == 0.0) return false;
    return std::abs(std::abs(p.beta) - std::abs(p.alpha)) <=
           1e-14 * std::max(1.0, std::abs(p.alpha));
}

namespace {

// Mode-space workspace for one (grid, params) pair. All tables are immutable
// after construction; evaluate() touches only caller-owned buffers.
struct NonlinearOp {
    const GridSpec& grid;
    double alpha, beta;
    std::vector<double> lp;        // P_{<= moll_level} mask (all ones if unmollified)
    std::vector<cplx> deriv;       // (i xi), Nyquist zeroed
    std::vector<double> nonlocal;  // xi coth(delta xi) or |xi|
    std::vector<char> keep;        // 2/3-rule mask (all ones if dealias off)

    NonlinearOp(const GridPtr& g, const ModelParams& p) : grid(*g) {
        p.validate();
        alpha = p.alpha;
        beta = p.beta;
        const std::size_t n = grid.size();
        const auto& xi = grid.wavenumbers();

        lp.assign(n, 1.0);
        if (p.moll_level) {
            const double scale = std::ldexp(1.0, *p.moll_level);
            for (std::size_t m = 0; m < n; ++m) lp[m] = lp_bump(xi[m] / scale);
        }

        deriv.resize(n);
        for (std::size_t m = 0; m < n; ++m) deriv[m] = cplx(0.0, xi[m]);
        deriv[grid.nyquist_index()] = 0.0;

        if (p.nonlocal == NonlocalKind::TDelta)
            nonlocal = real_values(symbol_Tdelta_dx(g, p.delta));
        else
            nonlocal = real_values(symbol_hilbert_dx(g));

        keep.assign(n, 1);
        if (p.dealias) {
            const long cut = static_cast<long>(n) / 3;
            for (std::size_t m = 0; m < n; ++m) {
                const long k = (m <= n / 2) ? static_cast<long>(m)
                                            : static_cast<long>(m) - static_cast<long>(n);
                if (std::labs(k) > cut) keep[m] = 0;
            }
        }
    }

    static std::vector<double> real_values(const MultiplierSymbol& s) {
        std::vector<double> v(s.values.size());
        for (std::size_t m = 0; m < v.size(); ++m) v[m] = s.values[m].real();
        return v;
    }

    // modes of -i P N(P u) given modes of u. Scratch vectors are caller-owned
    // so concurrent trajectories do not share state.
    void rhs_modes(const std::vector<cplx>& uhat, std::vector<cplx>& out,
                   std::vector<cplx>& za, std::vector<cplx>& zb,
                   std::vector<cplx>& zc) const {
        const std::size_t n = grid.size();
        const double inv = 1.0 / static_cast<double>(n);
        const Fft& fft = grid.fft();

        za.resize(n); zb.resize(n); zc.resize(n); out.resize(n);

        // zeta = P u (physical)
        for (std::size_t m = 0; m < n; ++m) za[m] = lp[m] * uhat[m];
        fft.backward(za.data(), zb.data());  // zb = zeta

        // w = |zeta|^2 -> modes, dealias
        for (std::size_t m = 0; m < n; ++m) za[m] = cplx(std::norm(zb[m]), 0.0);
        fft.forward(za.data(), zc.data());
        for (std::size_t m = 0; m < n; ++m) zc[m] *= keep[m] ? inv : 0.0;

        // a = d/dx w, b = (nonlocal) w
        for (std::size_t m = 0; m < n; ++m) za[m] = deriv[m] * zc[m];
        fft.backward(za.data(), out.data());  // out = a (physical)
        if (beta != 0.0) {
            for (std::size_t m = 0; m < n; ++m) za[m] = nonlocal[m] * zc[m];
            fft.backward(za.data(), zc.data());  // zc = b (physical)
        }

        // N = i alpha zeta a - beta zeta b (physical)
        const cplx ia(0.0, alpha);
        for (std::size_t m = 0; m < n; ++m) {
            cplx N = ia * zb[m] * out[m];
            if (beta != 0.0) N -= beta * zb[m] * zc[m];
            za[m] = N;
        }
        fft.forward(za.data(), out.data());
        const cplx mi(0.0, -1.0);
        for (std::size_t m = 0; m < n; ++m)
            out[m] *= keep[m] ? mi * lp[m] * inv : cplx(0.0, 0.0);
    }
};

bool finite_modes(const std::vector<cplx>& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

// Integrating-factor classical RK4 in transform space. E = e^{i dt/2 xi^2}.
struct Stepper {
    const GridPtr grid;
    NonlinearOp op;
    double dt;
    std::vector<cplx> ehalf, efull;
    mutable std::vector<cplx> k1, k2, k3, k4, stage, za, zb, zc;

    Stepper(GridPtr g, const ModelParams& p, double dt_)
        : grid(std::move(g)), op(grid, p), dt(dt_) {
        const auto& xi = grid->wavenumbers();
        const std::size_t n = grid->size();
        ehalf.resize(n);
        efull.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            ehalf[m] = std::polar(1.0, 0.5 * dt * xi[m] * xi[m]);
            efull[m] = ehalf[m] * ehalf[m];
        }
    }

    void advance(std::vector<cplx>& uhat) const {
        const std::size_t n = uhat.size();
        stage.resize(n);

        op.rhs_modes(uhat, k1, za, zb, zc);
        for (std::size_t m = 0; m < n; ++m)
            stage[m] = ehalf[m] * (uhat[m] + 0.5 * dt * k1[m]);
        op.rhs_modes(stage, k2, za, zb, zc);
        for (std::size_t m = 0; m < n; ++m)
            stage[m] = ehalf[m] * uhat[m] + 0.5 * dt * k2[m];
        op.rhs_modes(stage, k3, za, zb, zc);
        for (std::size_t m = 0; m < n; ++m)
            stage[m] = efull[m] * uhat[m] + dt * ehalf[m] * k3[m];
        op.rhs_modes(stage, k4, za, zb, zc);

        const double w = dt / 6.0;
        for (std::size_t m = 0; m < n; ++m)
            uhat[m] = efull[m] * uhat[m] +
                      w * (efull[m] * k1[m] + 2.0 * ehalf[m] * (k2[m] + k3[m]) + k4[m]);

        if (!finite_modes(uhat)) throw StepFailure("non-finite value during time step");
    }
};

}  // namespace

FieldState nonlinearity(const FieldState& f, const ModelParams& p) {
    ModelParams q = p;
    q.moll_level.reset();  // bare N(u), no outer projection
    NonlinearOp op(f.grid, q);
    auto uhat = modes(f);
    std::vector<cplx> out, za, zb, zc;
    op.rhs_modes(uhat, out, za, zb, zc);
    // rhs_modes returns -i N; undo the factor.
    const cplx i(0.0, 1.0);
    for (auto& v : out) v *= i;
    FieldState N = field_from_modes(f.grid, out, f.rho, f.time);
    if (!all_finite(N)) throw StepFailure("non-finite value in nonlinearity");
    return N;
}

std::pair<FieldState, FieldState> nonlinearity_split(const FieldState& f,
                                                     const ModelParams& p) {
    p.validate();
    // N_delta = -beta u L_delta |u|^2
    const std::size_t n = f.grid->size();
    FieldState w = f;
    for (std::size_t j = 0; j < n; ++j) w.values[j] = cplx(std::norm(f.values[j]), 0.0);
    if (p.dealias) {
        auto wh = modes(w);
        const long cut = static_cast<long>(n) / 3;
        for (std::size_t m = 0; m < n; ++m) {
            const long k = (m <= n / 2) ? static_cast<long>(m)
                                        : static_cast<long>(m) - static_cast<long>(n);
            if (std::labs(k) > cut) wh[m] = 0.0;
        }
        w = field_from_modes(f.grid, wh, f.rho, f.time);
    }

    const auto ld = apply_symbol(w, symbol_Ldelta(f.grid, p.delta));
    const auto dw = apply_symbol(w, symbol_deriv(f.grid, 1));
    const auto hdw = apply_symbol(w, symbol_hilbert_dx(f.grid));

    FieldState nd = f, ni = f;
    const cplx ia(0.0, p.alpha);
    for (std::size_t j = 0; j < n; ++j) {
        nd.values[j] = -p.beta * f.values[j] * ld.values[j];
        ni.values[j] = f.values[j] * (ia * dw.values[j] - p.beta * hdw.values[j]);
    }
    if (p.dealias) {
        auto trunc = [&](FieldState& g) {
            auto gh = modes(g);
            const long cut = static_cast<long>(n) / 3;
            for (std::size_t m = 0; m < n; ++m) {
                const long k = (m <= n / 2) ? static_cast<long>(m)
                                            : static_cast<long>(m) - static_cast<long>(n);
                if (std::labs(k) > cut) gh[m] = 0.0;
            }
            g = field_from_modes(g.grid, gh, g.rho, g.time);
        };
        trunc(nd);
        trunc(ni);
    }
    if (!all_finite(nd) || !all_finite(ni))
        throw StepFailure("non-finite value in nonlinearity split");
    return {nd, ni};
}

FieldState rhs_nonlinear(const FieldState& f, const ModelParams& p) {
    NonlinearOp op(f.grid, p);
    auto uhat = modes(f);
    std::vector<cplx> out, za, zb, zc;
    op.rhs_modes(uhat, out, za, zb, zc);
    return field_from_modes(f.grid, out, f.rho, f.time);
}

FieldState rhs_mollified(const FieldState& f, const ModelParams& p) {
    FieldState rhs = rhs_nonlinear(f, p);
    const auto d2 = apply_symbol(f, symbol_deriv(f.grid, 2));
    const cplx mi(0.0, -1.0);
    for (std::size_t j = 0; j < rhs.values.size(); ++j)
        rhs.values[j] += mi * d2.values[j];
    return rhs;
}

double stability_dt(const FieldState& f0) {
    double m2 = 0.0;
    for (const auto& v : f0.values) m2 = std::max(m2, std::norm(v));
    const double adv = 0.05 * f0.grid->dx() / (1.0 + m2);
    return std::min(0.5 / f0.grid->xi_max(), adv);
}

FieldState step(const FieldState& f, double dt, const ModelParams& p) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    Stepper st(f.grid, p, dt);
    auto uhat = modes(f);
    st.advance(uhat);
    return field_from_modes(f.grid, uhat, f.rho, f.time + dt);
}

Trajectory evolve(const FieldState& f0, double T, double dt, const ModelParams& p,
                  int record_every) {
    if (!(T > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("evolve: T and dt must be positive");
    if (record_every < 1) throw std::invalid_argument("evolve: record_every must be >= 1");

    Trajectory traj;
    traj.params = p;
    traj.dt = dt;
    traj.record_every = record_every;

    const auto nsteps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
    Stepper st(f0.grid, p, dt);
    auto uhat = modes(f0);

    traj.states.push_back(f0);
    for (std::size_t i = 1; i <= nsteps; ++i) {
        try {
            st.advance(uhat);
        } catch (const StepFailure& e) {
            traj.failed = true;
            traj.failure = e.what();
            break;
        }
        traj.steps_taken = i;
        if (i % static_cast<std::size_t>(record_every) == 0 || i == nsteps)
            traj.states.push_back(
                field_from_modes(f0.grid, uhat, f0.rho, f0.time + dt * static_cast<double>(i)));
    }
    return traj;
}

double duhamel_residual(const Trajectory& traj) {
    const auto& st = traj.states;
    if (st.size() < 5 || st.size() % 2 == 0)
        throw std::invalid_argument(
            "duhamel_residual: need an odd number (>= 5) of uniformly spaced records");
    const double spacing = st[1].time - st[0].time;
    for (std::size_t i = 1; i < st.size(); ++i) {
        const double d = st[i].time - st[i - 1].time;
        if (std::abs(d - spacing) > 1e-9 * std::max(1.0, std::abs(spacing)))
            throw std::invalid_argument("duhamel_residual: records not uniformly spaced");
    }

    const GridPtr grid = st[0].grid;
    const auto& xi = grid->wavenumbers();
    const std::size_t n = grid->size();
    const double tN = st.back().time;

    NonlinearOp op(grid, traj.params);
    std::vector<cplx> acc(n, cplx(0, 0)), nh, za, zb, zc;
    for (std::size_t i = 0; i < st.size(); ++i) {
        auto uhat = modes(st[i]);
        op.rhs_modes(uhat, nh, za, zb, zc);  // -i P N(P u)
        double w = (i == 0 || i + 1 == st.size()) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w *= spacing / 3.0;
        const double tau = tN - st[i].time;
        for (std::size_t m = 0; m < n; ++m)
            acc[m] += w * std::polar(1.0, tau * xi[m] * xi[m]) * nh[m];
    }
    // residual modes: u(T) - U(T) u(0) - Simpson[U(T-s)(-i P N(P u))]
    auto u0 = modes(st.front());
    auto uT = modes(st.back());
    double num = 0.0, den = 0.0;
    const double t0 = tN - st.front().time;
    for (std::size_t m = 0; m < n; ++m) {
        const cplx r = uT[m] - std::polar(1.0, t0 * xi[m] * xi[m]) * u0[m] - acc[m];
        num += std::norm(r);
        den += std::norm(uT[m]);
    }
    return std::sqrt(num / den);
}

// --- initial data -----------------------------------------------------------

FieldState initial_constant(GridPtr grid, double rho) {
    FieldState f = make_field(std::move(grid), rho);
    for (auto& v : f.values) v = rho;
    return f;
}

FieldState initial_plane_wave(GridPtr grid, double rho, int mode) {
    FieldState f = make_field(std::move(grid), rho);
    const double xi = 2.0 * M_PI * static_cast<double>(mode) / f.grid->length();
    for (std::size_t j = 0; j < f.values.size(); ++j)
        f.values[j] = rho * std::polar(1.0, xi * f.grid->node(j));
    return f;
}

FieldState initial_grey_pair(GridPtr grid, double rho, double theta, double x0) {
    if (!(theta > 0.0 && theta < M_PI / 2))
        throw std::invalid_argument("initial_grey_pair: theta must lie in (0, pi/2)");
    FieldState f = make_field(std::move(grid), rho);
    const double c = std::cos(theta), s = std::sin(theta);
    const double kappa = rho * c;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        const double x = f.grid->node(j);
        const cplx rise(c * std::tanh(kappa * (x + x0)), s);
        const cplx fall(-c * std::tanh(kappa * (x - x0)), s);
        f.values[j] = rho * rise * fall;
    }
    if (!seam_check(f, 1e-8))
        throw std::invalid_argument(
            "initial_grey_pair: box too small, seam deviates from rho by more than 1e-8");
    return f;
}

FieldState initial_bump(GridPtr grid, double rho, double amp, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("initial_bump: width must be positive");
    FieldState f = make_field(std::move(grid), rho);
    for (std::size_t j = 0; j < f.values.size(); ++j)
        f.values[j] = rho + amp / std::cosh(f.grid->node(j) / width);
    return f;
}

FieldState initial_random_band(GridPtr grid, double rho, std::uint64_t seed, int band,
                               double amp) {
    if (band < 1) throw std::invalid_argument("initial_random_band: band must be >= 1");
    const std::size_t n = grid->size();
    if (static_cast<std::size_t>(band) >= n / 2)
        throw std::invalid_argument("initial_random_band: band exceeds grid modes");
    std::vector<cplx> c(n, cplx(0, 0));
    c[0] = rho;
    const auto& xi = grid->wavenumbers();
    for (std::size_t m = 1; m < n; ++m) {
        const long k = (m <= n / 2) ? static_cast<long>(m)
                                    : static_cast<long>(m) - static_cast<long>(n);
        if (std::labs(k) > band) continue;
        const double env = std::pow(1.0 + std::abs(xi[m]), -2.75);
        const double phase = 2.0 * M_PI * uniform01(seed, m);
        c[m] = amp * env * std::polar(1.0, phase);
    }
    return field_from_modes(std::move(grid), c, rho);
}

}  // namespace ginls
