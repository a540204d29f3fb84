#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "ginls/rng.hpp"
#include "ginls/symbols.hpp"
#include "ginls/zhidkov.hpp"

using namespace ginls;

namespace {

FieldState from_fn(const GridPtr& g, double rho, const std::function<cplx(double)>& fn) {
    FieldState f = make_field(g, rho);
    for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] = fn(g->node(j));
    return f;
}

double max_diff(const FieldState& a, const FieldState& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}

FieldState random_field(const GridPtr& g, std::uint64_t seed, int band = 0) {
    const std::size_t n = g->size();
    if (band == 0) band = static_cast<int>(n / 4);
    std::vector<cplx> c(n, cplx(0, 0));
    for (std::size_t m = 0; m < n; ++m) {
        const long k = (m <= n / 2) ? static_cast<long>(m)
                                    : static_cast<long>(m) - static_cast<long>(n);
        if (std::labs(k) > band) continue;
        const double mag = uniform01(seed, 2 * m);
        const double ph = 2.0 * M_PI * uniform01(seed, 2 * m + 1);
        c[m] = mag / (1.0 + 0.3 * static_cast<double>(std::labs(k))) * std::polar(1.0, ph);
    }
    return field_from_modes(g, c, 1.0);
}

constexpr double kCoth1 = 1.3130352854993315;  // (e^2+1)/(e^2-1)

}  // namespace

TEST_CASE("make_grid wavenumbers and preconditions") {
    auto g = make_grid(8, 2.0 * M_PI);
    const std::vector<double> want = {0, 1, 2, 3, 4, -3, -2, -1};
    REQUIRE(g->wavenumbers().size() == 8);
    for (std::size_t m = 0; m < 8; ++m)
        CHECK(g->wavenumbers()[m] == doctest::Approx(want[m]).epsilon(1e-15));
    CHECK(g->dx() * static_cast<double>(g->size()) == doctest::Approx(g->length()));

    auto gp = make_grid(8, M_PI);
    double smallest_pos = 1e300;
    for (double xi : gp->wavenumbers())
        if (xi > 0) smallest_pos = std::min(smallest_pos, xi);
    CHECK(smallest_pos == doctest::Approx(2.0));

    CHECK_THROWS_AS(make_grid(7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(64, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(64, -2.0), std::invalid_argument);
}

TEST_CASE("derivative symbol on trig fields") {
    auto g = make_grid(64, 2.0 * M_PI);
    auto f = from_fn(g, 1.0, [](double x) { return cplx(std::sin(x), 0); });
    auto want = from_fn(g, 1.0, [](double x) { return cplx(std::cos(x), 0); });
    CHECK(max_diff(apply_symbol(f, symbol_deriv(g, 1)), want) < 1e-13);
}

TEST_CASE("derivative of constants and second derivative") {
    auto g = make_grid(64, 2.0 * M_PI);
    auto cst = from_fn(g, 1.0, [](double) { return cplx(2.5, -1.0); });
    for (int k = 1; k <= 3; ++k) {
        auto d = apply_symbol(cst, symbol_deriv(g, k));
        CHECK(linf_norm(d) < 1e-13);
    }
    auto f = from_fn(g, 1.0, [](double x) { return cplx(std::cos(2 * x), 0); });
    auto want = from_fn(g, 1.0, [](double x) { return cplx(-4.0 * std::cos(2 * x), 0); });
    CHECK(max_diff(apply_symbol(f, symbol_deriv(g, 2)), want) < 1e-12);
    CHECK_THROWS_AS(symbol_deriv(g, 0), std::invalid_argument);
}

TEST_CASE("hilbert symbol rotates trig modes") {
    auto g = make_grid(128, 2.0 * M_PI);
    for (int k : {1, 3, 7}) {
        auto f = from_fn(g, 1.0, [k](double x) { return cplx(std::cos(k * x), 0); });
        auto want = from_fn(g, 1.0, [k](double x) { return cplx(std::sin(k * x), 0); });
        CHECK(max_diff(apply_symbol(f, symbol_hilbert(g)), want) < 1e-12);

        auto fs = from_fn(g, 1.0, [k](double x) { return cplx(std::sin(k * x), 0); });
        auto wants = from_fn(g, 1.0, [k](double x) { return cplx(-std::cos(k * x), 0); });
        CHECK(max_diff(apply_symbol(fs, symbol_hilbert(g)), wants) < 1e-12);
    }
    auto cst = from_fn(g, 1.0, [](double) { return cplx(3.0, 0); });
    CHECK(linf_norm(apply_symbol(cst, symbol_hilbert(g))) < 1e-14);
}

TEST_CASE("T_delta d/dx symbol values") {
    auto g = make_grid(64, 2.0 * M_PI);
    auto f = from_fn(g, 1.0, [](double x) { return cplx(std::cos(x), 0); });
    auto want = from_fn(g, 1.0, [](double x) { return cplx(kCoth1 * std::cos(x), 0); });
    CHECK(max_diff(apply_symbol(f, symbol_Tdelta_dx(g, 1.0)), want) < 1e-12);

    auto cst = from_fn(g, 1.0, [](double) { return cplx(0.7, 0.1); });
    CHECK(linf_norm(apply_symbol(cst, symbol_Tdelta_dx(g, 1.0))) < 1e-14);

    // deep water: at xi = 1 the symbol approaches |xi| = 1
    auto s = symbol_Tdelta_dx(g, 100.0);
    CHECK(std::abs(s.values[1].real() - 1.0) < 1e-12);

    CHECK_THROWS_AS(symbol_Tdelta_dx(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(symbol_Tdelta_dx(g, -1.0), std::invalid_argument);
}

TEST_CASE("L_delta symbol bound and identities") {
    for (double delta : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        auto g = make_grid(256, 16.0 * M_PI);
        auto r = symbol_Ldelta(g, delta);
        auto t = symbol_Tdelta_dx(g, delta);
        const auto& xi = g->wavenumbers();
        double rmax = 0.0;
        for (std::size_t m = 0; m < xi.size(); ++m) {
            CHECK(r.values[m].imag() == 0.0);
            if (xi[m] != 0.0) {
                CHECK(r.values[m].real() > 0.0);
                CHECK(r.values[m].real() < 1.0 / delta);
                // symbol identity, up to one rounding of the larger term
                CHECK(std::abs(t.values[m].real() - std::abs(xi[m]) - r.values[m].real()) <=
                      4e-16 * std::abs(t.values[m].real()));
            } else {
                CHECK(r.values[m].real() == 0.0);
            }
            rmax = std::max(rmax, std::abs(r.values[m]));
        }
        CHECK(rmax <= 1.0 / delta);
    }
    // sup approaches 1/delta as the smallest nonzero mode goes to 0
    auto gwide = make_grid(64, 4096.0 * M_PI);
    auto r = symbol_Ldelta(gwide, 1.0);
    double rmax = 0.0;
    for (const auto& v : r.values) rmax = std::max(rmax, std::abs(v));
    CHECK(rmax > 0.999);
    // delta = 1, xi = 1: coth(1) - 1
    auto g1 = make_grid(64, 2.0 * M_PI);
    auto r1 = symbol_Ldelta(g1, 1.0);
    CHECK(r1.values[1].real() == doctest::Approx(kCoth1 - 1.0).epsilon(1e-13));
}

TEST_CASE("free propagator symbol") {
    auto g = make_grid(128, 2.0 * M_PI);
    const double t = 0.37;
    auto f = from_fn(g, 1.0, [](double x) { return std::polar(1.0, 3.0 * x); });
    auto u = apply_symbol(f, symbol_propagator(g, t));
    auto want = from_fn(g, 1.0, [t](double x) { return std::polar(1.0, 3.0 * x + 9.0 * t); });
    CHECK(max_diff(u, want) < 1e-12);

    auto rf = random_field(g, 11);
    CHECK(max_diff(apply_symbol(rf, symbol_propagator(g, 0.0)), rf) < 1e-14);
    CHECK(l2_norm(apply_symbol(rf, symbol_propagator(g, 2.13))) ==
          doctest::Approx(l2_norm(rf)).epsilon(1e-13));
}

TEST_CASE("Littlewood-Paley projections") {
    auto g = make_grid(256, 2.0 * M_PI);
    // phi = 1 on |xi| <= 2^l: k = 4 <= 2^2 stays put
    auto f4 = from_fn(g, 1.0, [](double x) { return cplx(std::cos(4 * x), 0); });
    CHECK(max_diff(apply_symbol(f4, symbol_lp(g, 2, LpKind::AtMost)), f4) < 1e-13);
    // support |xi| <= 2^{l+1}: k = 9 > 8 is annihilated at l = 2
    auto f9 = from_fn(g, 1.0, [](double x) { return cplx(std::cos(9 * x), 0); });
    CHECK(linf_norm(apply_symbol(f9, symbol_lp(g, 2, LpKind::AtMost))) < 1e-13);

    // telescoping: sum of blocks equals the cutoff
    auto rf = random_field(g, 5);
    for (int J : {0, 2, 4}) {
        FieldState acc = apply_symbol(rf, symbol_lp(g, 0, LpKind::Block));
        for (int j = 1; j <= J; ++j) {
            auto pj = apply_symbol(rf, symbol_lp(g, j, LpKind::Block));
            for (std::size_t i = 0; i < acc.values.size(); ++i)
                acc.values[i] += pj.values[i];
        }
        CHECK(max_diff(acc, apply_symbol(rf, symbol_lp(g, J, LpKind::AtMost))) < 1e-12);
    }
    // full partition reconstructs the field
    const int top = lp_top_level(*g);
    CHECK(max_diff(apply_symbol(rf, symbol_lp(g, top, LpKind::AtMost)), rf) < 1e-12);

    CHECK_THROWS_AS(symbol_lp(g, -1, LpKind::AtMost), std::invalid_argument);
}

TEST_CASE("apply_symbol algebra") {
    auto g = make_grid(128, 4.0 * M_PI);
    auto rf = random_field(g, 3);
    CHECK(max_diff(apply_symbol(rf, symbol_identity(g)), rf) < 1e-13);

    auto a = symbol_Tdelta_dx(g, 0.7);
    auto b = symbol_propagator(g, 0.11);
    auto seq = apply_symbol(apply_symbol(rf, a), b);
    auto prod = apply_symbol(rf, symbol_product(a, b));
    CHECK(max_diff(seq, prod) < 1e-11);

    // real even symbol keeps real fields real
    auto realf = from_fn(g, 1.0, [](double x) { return cplx(std::exp(std::cos(x)), 0); });
    auto out = apply_symbol(realf, symbol_Tdelta_dx(g, 1.3));
    double im = 0.0;
    for (const auto& v : out.values) im = std::max(im, std::abs(v.imag()));
    CHECK(im < 1e-12);

    auto g2 = make_grid(64, 4.0 * M_PI);
    CHECK_THROWS_AS(apply_symbol(rf, symbol_identity(g2)), std::invalid_argument);
}

TEST_CASE("operator symmetry, positivity, and norm bounds over seeded fields") {
    auto g = make_grid(256, 8.0 * M_PI);
    auto tdx = symbol_Tdelta_dx(g, 1.0);
    auto hdx = symbol_hilbert_dx(g);
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto f = random_field(g, 1000 + s);
        auto h = random_field(g, 2000 + s);
        for (const auto& sym : {tdx, hdx}) {
            auto sf = apply_symbol(f, sym);
            auto sh = apply_symbol(h, sym);
            const double defect = std::abs(inner(sf, h) - inner(f, sh));
            CHECK(defect <= 1e-10 * l2_norm(f) * l2_norm(h));
            const cplx quad = inner(sf, f);
            CHECK(quad.real() >= -1e-12 * l2_norm(f) * l2_norm(f));
            CHECK(std::abs(quad.imag()) <= 1e-10 * l2_norm(f) * l2_norm(f));
        }
    }
    // boundedness of L_delta and the triangle split for T_delta d/dx
    for (double delta : {0.5, 2.0}) {
        auto ld = symbol_Ldelta(g, delta);
        auto td = symbol_Tdelta_dx(g, delta);
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto f = random_field(g, 300 + s);
            CHECK(l2_norm(apply_symbol(f, ld)) <= l2_norm(f) / delta + 1e-12);
            CHECK(l2_norm(apply_symbol(f, td)) <=
                  deriv_sobolev_norm(f, 1) + l2_norm(f) / delta + 1e-10);
        }
    }
}

TEST_CASE("free propagator difference bound with explicit constant") {
    auto g = make_grid(256, 8.0 * M_PI);
    for (double t : {0.01, 0.1, 1.0}) {
        auto prop = symbol_propagator(g, t);
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto f = random_field(g, 40 + s);
            auto uf = apply_symbol(f, prop);
            FieldState diff = f;
            for (std::size_t j = 0; j < f.values.size(); ++j)
                diff.values[j] = uf.values[j] - f.values[j];
            CHECK(l2_norm(diff) <=
                  std::sqrt(2.0 * t) * deriv_sobolev_norm(f, 1) * (1.0 + 1e-12));
        }
    }
}
