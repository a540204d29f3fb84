#include "ginls/symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace ginls {

namespace {

MultiplierSymbol blank(GridPtr grid, std::string tag) {
    MultiplierSymbol s;
    s.grid = std::move(grid);
    s.values.assign(s.grid->size(), cplx(0.0, 0.0));
    s.tag = std::move(tag);
    return s;
}

// r_delta(xi) = (coth(delta xi) - sgn xi) xi = |xi| * 2 / (e^{2 delta |xi|} - 1),
// evaluated without cancellation; 0 at xi = 0 and in (0, 1/delta) elsewhere.
double r_delta(double delta, double xi) {
    if (xi == 0.0) return 0.0;
    const double y = 2.0 * delta * std::abs(xi);
    if (y > 700.0) return 0.0;
    return std::abs(xi) * 2.0 / std::expm1(y);
}

// xi coth(delta xi) = |xi| + r_delta(xi); pinned to 0 at xi = 0 (the operator
// always acts through a derivative, which kills the mean).
double xi_coth(double delta, double xi) {
    if (xi == 0.0) return 0.0;
    return std::abs(xi) + r_delta(delta, xi);
}

}  // namespace

double lp_bump(double s) {
    const double a = std::abs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double h1 = std::exp(-1.0 / (2.0 - a));
    const double h2 = std::exp(-1.0 / (a - 1.0));
    return h1 / (h1 + h2);
}

MultiplierSymbol symbol_identity(GridPtr grid) {
    auto s = blank(std::move(grid), "identity");
    for (auto& v : s.values) v = 1.0;
    return s;
}

MultiplierSymbol symbol_deriv(GridPtr grid, int k) {
    if (k < 1) throw std::invalid_argument("symbol_deriv: order must be >= 1");
    auto s = blank(std::move(grid), "deriv(" + std::to_string(k) + ")");
    const auto& xi = s.grid->wavenumbers();
    for (std::size_t m = 0; m < xi.size(); ++m)
        s.values[m] = std::pow(cplx(0.0, xi[m]), k);
    if (k % 2 == 1) s.values[s.grid->nyquist_index()] = 0.0;
    return s;
}

MultiplierSymbol symbol_hilbert(GridPtr grid) {
    auto s = blank(std::move(grid), "hilbert");
    const auto& xi = s.grid->wavenumbers();
    for (std::size_t m = 0; m < xi.size(); ++m) {
        if (xi[m] > 0.0) s.values[m] = cplx(0.0, -1.0);
        else if (xi[m] < 0.0) s.values[m] = cplx(0.0, 1.0);
    }
    return s;
}

MultiplierSymbol symbol_hilbert_dx(GridPtr grid) {
    auto s = blank(std::move(grid), "hilbert_dx");
    const auto& xi = s.grid->wavenumbers();
    for (std::size_t m = 0; m < xi.size(); ++m) s.values[m] = std::abs(xi[m]);
    return s;
}

MultiplierSymbol symbol_Tdelta_dx(GridPtr grid, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("symbol_Tdelta_dx: delta must be positive");
    auto s = blank(std::move(grid), "Tdelta_dx");
    const auto& xi = s.grid->wavenumbers();
    for (std::size_t m = 0; m < xi.size(); ++m) s.values[m] = xi_coth(delta, xi[m]);
    return s;
}

MultiplierSymbol symbol_Ldelta(GridPtr grid, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("symbol_Ldelta: delta must be positive");
    auto s = blank(std::move(grid), "Ldelta");
    const auto& xi = s.grid->wavenumbers();
    for (std::size_t m = 0; m < xi.size(); ++m) s.values[m] = r_delta(delta, xi[m]);
    return s;
}

MultiplierSymbol symbol_propagator(GridPtr grid, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("symbol_propagator: t must be finite");
    auto s = blank(std::move(grid), "propagator(" + std::to_string(t) + ")");
    const auto& xi = s.grid->wavenumbers();
    for (std::size_t m = 0; m < xi.size(); ++m)
        s.values[m] = std::polar(1.0, t * xi[m] * xi[m]);
    return s;
}

MultiplierSymbol symbol_lp(GridPtr grid, int level, LpKind kind) {
    if (level < 0) throw std::invalid_argument("symbol_lp: level must be >= 0");
    const double scale = std::ldexp(1.0, level);
    auto s = blank(std::move(grid),
                   (kind == LpKind::AtMost ? "lp_le(" : "lp_block(") + std::to_string(level) + ")");
    const auto& xi = s.grid->wavenumbers();
    if (kind == LpKind::AtMost || level == 0) {
        for (std::size_t m = 0; m < xi.size(); ++m) s.values[m] = lp_bump(xi[m] / scale);
    } else {
        const double below = std::ldexp(1.0, level - 1);
        for (std::size_t m = 0; m < xi.size(); ++m)
            s.values[m] = lp_bump(xi[m] / scale) - lp_bump(xi[m] / below);
    }
    return s;
}

int lp_top_level(const GridSpec& grid) {
    int j = 0;
    while (std::ldexp(1.0, j) < grid.xi_max()) ++j;
    return j;
}

MultiplierSymbol symbol_product(const MultiplierSymbol& a, const MultiplierSymbol& b) {
    if (!a.grid->same_as(*b.grid))
        throw std::invalid_argument("symbol_product: grid mismatch");
    MultiplierSymbol s = a;
    s.tag = a.tag + "*" + b.tag;
    for (std::size_t m = 0; m < s.values.size(); ++m) s.values[m] *= b.values[m];
    return s;
}

FieldState apply_symbol(const FieldState& f, const MultiplierSymbol& s) {
    if (!f.grid->same_as(*s.grid))
        throw std::invalid_argument("apply_symbol: grid mismatch");
    const std::size_t n = f.grid->size();
    std::vector<cplx> spec(n);
    f.grid->fft().forward(f.values.data(), spec.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) spec[m] *= s.values[m] * inv;
    FieldState out = f;
    f.grid->fft().backward(spec.data(), out.values.data());
    return out;
}

}  // namespace ginls
