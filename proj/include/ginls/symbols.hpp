#pragma once

#include <string>
#include <vector>

#include "ginls/field.hpp"
#include "ginls/grid.hpp"

namespace ginls {

// A Fourier multiplier as a precomputed table of symbol values on the grid's
// wavenumbers (transform order).
struct MultiplierSymbol {
    GridPtr grid;
    std::vector<cplx> values;
    std::string tag;
};

// Smooth cutoff profile: 1 on |s| <= 1, 0 on |s| >= 2, C^inf transition
// h(2-|s|) / (h(2-|s|) + h(|s|-1)) with h(t) = exp(-1/t) for t > 0.
double lp_bump(double s);

MultiplierSymbol symbol_identity(GridPtr grid);

// (i xi)^k, Nyquist mode zeroed for odd k so real fields stay real.
MultiplierSymbol symbol_deriv(GridPtr grid, int k);

// -i sgn(xi); 0 at xi = 0.
MultiplierSymbol symbol_hilbert(GridPtr grid);

// |xi| — the composition H d/dx as a single even symbol (Nyquist kept).
MultiplierSymbol symbol_hilbert_dx(GridPtr grid);

// xi coth(delta xi), the composition T_delta d/dx: real, even, >= 0, and 0 at
// xi = 0 (zero-mode convention).
MultiplierSymbol symbol_Tdelta_dx(GridPtr grid, double delta);

// r_delta(xi) = (coth(delta xi) - sgn xi) xi in (0, 1/delta) off xi = 0.
MultiplierSymbol symbol_Ldelta(GridPtr grid, double delta);

// e^{i t xi^2}; unit modulus; identity at t = 0.
MultiplierSymbol symbol_propagator(GridPtr grid, double t);

enum class LpKind { AtMost, Block };

// AtMost: phi(xi / 2^level). Block: P_level = P_{<=level} - P_{<=level-1}
// for level >= 1 and P_0 = P_{<=0}.
MultiplierSymbol symbol_lp(GridPtr grid, int level, LpKind kind);

// Smallest j with P_{<=j} == identity on the grid band; blocks 0..j cover it.
int lp_top_level(const GridSpec& grid);

MultiplierSymbol symbol_product(const MultiplierSymbol& a, const MultiplierSymbol& b);

// Transform, multiply pointwise by the symbol table, transform back.
// Preserves rho and the time tag. Linear in f.
FieldState apply_symbol(const FieldState& f, const MultiplierSymbol& s);

}  // namespace ginls
