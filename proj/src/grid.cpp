#include "ginls/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ginls {

namespace {
// FFTW plan creation is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    std::vector<cplx> a(n), b(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(b.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(b.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void Fft::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(bwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

GridSpec::GridSpec(std::size_t n, double length)
    : n_(n), length_(length), dx_(length / static_cast<double>(n)), fft_(n) {
    xi_.resize(n);
    const double dxi = 2.0 * M_PI / length;
    for (std::size_t m = 0; m < n; ++m) {
        const auto k = (m <= n / 2) ? static_cast<long>(m)
                                    : static_cast<long>(m) - static_cast<long>(n);
        xi_[m] = dxi * static_cast<double>(k);
    }
    xi_max_ = dxi * static_cast<double>(n / 2);
}

GridPtr make_grid(std::size_t n, double length) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("make_grid: n must be a power of two with n >= 8");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("make_grid: length must be positive and finite");
    return std::make_shared<const GridSpec>(n, length);
}

}  // namespace ginls
