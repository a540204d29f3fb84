#include "ginls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace ginls {

FieldState make_field(GridPtr grid, double rho, double time) {
    if (!grid) throw std::invalid_argument("make_field: null grid");
    if (!(rho > 0.0)) throw std::invalid_argument("make_field: rho must be positive");
    FieldState f;
    f.grid = std::move(grid);
    f.values.assign(f.grid->size(), cplx(0.0, 0.0));
    f.rho = rho;
    f.time = time;
    return f;
}

bool all_finite(const FieldState& f) {
    for (const auto& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

std::vector<cplx> modes(const FieldState& f) {
    const std::size_t n = f.grid->size();
    std::vector<cplx> c(n);
    f.grid->fft().forward(f.values.data(), c.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : c) v *= inv;
    return c;
}

FieldState field_from_modes(GridPtr grid, const std::vector<cplx>& c, double rho,
                            double time) {
    if (c.size() != grid->size())
        throw std::invalid_argument("field_from_modes: mode count mismatch");
    FieldState f = make_field(std::move(grid), rho, time);
    f.grid->fft().backward(c.data(), f.values.data());
    return f;
}

cplx inner(const FieldState& f, const FieldState& g) {
    if (!f.grid->same_as(*g.grid)) throw std::invalid_argument("inner: grid mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < f.values.size(); ++j) s += f.values[j] * std::conj(g.values[j]);
    return s * f.grid->dx();
}

double l2_norm(const FieldState& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid->dx());
}

double linf_norm(const FieldState& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ginls
