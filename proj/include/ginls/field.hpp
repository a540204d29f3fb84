#pragma once

#include <vector>

#include "ginls/grid.hpp"

namespace ginls {

// Complex field samples at one time over a periodic grid, with the
// nonvanishing background level rho attached.
struct FieldState {
    GridPtr grid;
    std::vector<cplx> values;
    double rho = 1.0;
    double time = 0.0;
};

FieldState make_field(GridPtr grid, double rho, double time = 0.0);

bool all_finite(const FieldState& f);

// Fourier coefficients c_k = (1/n) sum_j f_j e^{-2pi i jk/n}, transform order.
// Band-limited fields satisfy f(x) = sum_k c_k e^{i xi_k x} exactly on nodes.
std::vector<cplx> modes(const FieldState& f);
FieldState field_from_modes(GridPtr grid, const std::vector<cplx>& c, double rho,
                            double time = 0.0);

// dx * sum_j f_j conj(g_j)  — the grid L^2 inner product (f, g).
cplx inner(const FieldState& f, const FieldState& g);
double l2_norm(const FieldState& f);
double linf_norm(const FieldState& f);

}  // namespace ginls
