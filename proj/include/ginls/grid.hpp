#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace ginls {

using cplx = std::complex<double>;

// Thin wrapper around FFTW complex 1-D plans. Plans are built once per grid;
// execution on distinct arrays is thread-safe.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // out = sum_j in[j] e^{-2pi i jk/n}   (unnormalized)
    void forward(const cplx* in, cplx* out) const;
    // out = sum_k in[k] e^{+2pi i jk/n}   (unnormalized)
    void backward(const cplx* in, cplx* out) const;

    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    void* fwd_;
    void* bwd_;
};

// Uniform periodic grid on [-L/2, L/2) with n points (n a power of two) and
// the discrete wavenumber set xi_k = 2*pi*k/L, k in {-n/2+1, ..., n/2}, stored
// in transform (FFT) ordering: index 0 carries xi = 0.
class GridSpec {
public:
    GridSpec(std::size_t n, double length);

    std::size_t size() const { return n_; }
    double length() const { return length_; }
    double dx() const { return dx_; }
    double node(std::size_t j) const { return -0.5 * length_ + dx_ * static_cast<double>(j); }
    const std::vector<double>& wavenumbers() const { return xi_; }
    double xi_max() const { return xi_max_; }
    std::size_t nyquist_index() const { return n_ / 2; }

    const Fft& fft() const { return fft_; }

    bool same_as(const GridSpec& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

private:
    std::size_t n_;
    double length_;
    double dx_;
    double xi_max_;
    std::vector<double> xi_;
    Fft fft_;
};

using GridPtr = std::shared_ptr<const GridSpec>;

// Throws std::invalid_argument unless n is a power of two with n >= 8 and
// length > 0.
GridPtr make_grid(std::size_t n, double length);

}  // namespace ginls
