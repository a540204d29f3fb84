#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ginls/oracle.hpp"

using namespace ginls::oracle;

namespace {

LineSampledFunction gaussian_samples(double R = 30.0, std::size_t n = 6001) {
    return LineSampledFunction::sample(
        R, n, [](double x) { return cplx(std::exp(-x * x), 0.0); });
}

std::vector<double> eval_points(const LineSampledFunction& f) {
    std::vector<double> xs;
    for (int i = -20; i <= 20; ++i) xs.push_back(snap_to_lattice(f, 0.1 * i));
    return xs;
}

constexpr double kPiOverSinhPi = 0.2720290549821332;
constexpr double kPiCothHalfPi = 3.4253771499192953;

}  // namespace

TEST_CASE("hyperbolic identity residuals stay at roundoff") {
    for (double x : {1.0, -2.0, 1e-3, -1e-3, 0.037, 12.0, 30.0}) {
        const auto r = hyperbolic_identity_suite(x);
        CHECK(r.coth_split <= 1e-13);
        CHECK(r.half_angle <= 1e-13);
    }
    CHECK_THROWS_AS(hyperbolic_identity_suite(0.0), std::invalid_argument);
}

TEST_CASE("tanh transform: regularized quadrature vs closed form") {
    auto t1 = tanh_fourier_check(1.0);
    CHECK(t1.closed_form.real() == 0.0);
    CHECK(t1.closed_form.imag() == doctest::Approx(-2.0 * kPiOverSinhPi).epsilon(1e-12));
    CHECK(std::abs(t1.numeric - t1.closed_form) < 1e-6);

    auto t2 = tanh_fourier_check(2.0);
    CHECK(t2.closed_form.imag() ==
          doctest::Approx(-2.0 * M_PI / std::sinh(2.0 * M_PI)).epsilon(1e-12));
    CHECK(std::abs(t2.numeric - t2.closed_form) < 1e-6);

    // odd in xi
    auto tm = tanh_fourier_check(-1.0);
    CHECK(std::abs(tm.numeric + t1.numeric) < 1e-9);

    CHECK_THROWS_AS(tanh_fourier_check(1e-4), std::invalid_argument);
}

TEST_CASE("coth transform: assembled quadrature vs closed form") {
    auto c1 = coth_fourier_check(1.0);
    CHECK(c1.closed_form.imag() == doctest::Approx(-kPiCothHalfPi).epsilon(1e-12));
    CHECK(std::abs(c1.numeric - c1.closed_form) < 1e-6);
    for (double xi : {0.5, 1.0, 2.0}) {
        auto c = coth_fourier_check(xi);
        CHECK(c.identity_residual <= 1e-12);
        CHECK(std::abs(c.numeric - c.closed_form) < 1e-6);
    }
}

TEST_CASE("kernel p.v. quadrature agrees with the Fourier-side oracle") {
    const auto f = gaussian_samples();
    const auto xs = eval_points(f);
    for (double delta : {0.5, 1.0, 2.0, 4.0}) {
        const auto a = kernel_Tdelta_pv(f, delta, xs);
        const auto b = line_multiplier_Tdelta(f, delta, xs);
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            scale = std::max(scale, std::abs(b[i]));
            err = std::max(err, std::abs(a[i] - b[i]));
        }
        CHECK(err / scale < 1e-6);
    }
}

TEST_CASE("odd kernel parity: even real input gives real odd output") {
    const auto f = gaussian_samples();
    std::vector<double> xs, xs_neg;
    for (int i = 1; i <= 15; ++i) {
        xs.push_back(snap_to_lattice(f, 0.13 * i));
        xs_neg.push_back(snap_to_lattice(f, -0.13 * i));
    }
    const auto plus = line_multiplier_Tdelta(f, 1.0, xs);
    const auto minus = line_multiplier_Tdelta(f, 1.0, xs_neg);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(plus[i].imag()) < 1e-9);
        CHECK(std::abs(plus[i] + minus[i]) < 1e-8);
    }
}

TEST_CASE("deep-water limit of the kernel oracle") {
    const auto f = gaussian_samples();
    const auto xs = eval_points(f);
    const auto hil = kernel_hilbert_pv(f, xs);
    const auto hil_fourier = line_multiplier_hilbert(f, xs);

    double base = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        base = std::max(base, std::abs(hil[i]));
        CHECK(std::abs(hil[i] - hil_fourier[i]) < 1e-6);
    }

    std::vector<double> gaps;
    for (double delta : {2.0, 4.0, 8.0, 16.0}) {
        const auto t = kernel_Tdelta_pv(f, delta, xs);
        double gap = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            gap = std::max(gap, std::abs(t[i] - hil[i]));
        gaps.push_back(gap / base);
    }
    // decay at least first order in 1/delta
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
    const double rate = std::log2(gaps[0] / gaps.back()) / 3.0;
    CHECK(rate >= 1.0);
}

TEST_CASE("window and lattice preconditions") {
    const auto f = gaussian_samples(20.0, 2001);
    CHECK_THROWS_AS(kernel_Tdelta_pv(f, 1.0, {19.9}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_Tdelta_pv(f, -1.0, {0.0}), std::invalid_argument);
    LineSampledFunction bad = f;
    bad.nodes[5] += 1e-3;
    CHECK_THROWS_AS(kernel_Tdelta_pv(bad, 1.0, {0.0}), std::invalid_argument);

    // a function that does not vanish inside the window is rejected
    CHECK_THROWS_AS(
        LineSampledFunction::sample(5.0, 501, [](double) { return cplx(1.0, 0.0); }),
        std::invalid_argument);
}
