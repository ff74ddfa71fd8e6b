#pragma once

#include <complex>
#include <memory>
#include <span>

namespace rbc::fft {

using cplx = std::complex<double>;

/// Row-wise real FFT of length n. Forward transforms divide by n so that a
/// coefficient is the cell average of f(y) e^{-iky}.
class RowFft {
public:
    explicit RowFft(int n);
    ~RowFft();
    RowFft(const RowFft&) = delete;
    RowFft& operator=(const RowFft&) = delete;

    int size() const { return n_; }
    int modes() const { return n_ / 2 + 1; }

    /// `rows` rows of n reals -> rows of n/2+1 coefficients.
    void forward(std::span<const double> in, std::span<cplx> out, int rows) const;
    void inverse(std::span<const cplx> in, std::span<double> out, int rows) const;

private:
    struct Plans;
    int n_;
    std::unique_ptr<Plans> plans_;
};

/// 2D real FFT on an (ny rows) x (nx columns) row-major array, same
/// normalization convention as RowFft. Spectral layout is ny x (nx/2+1).
class Fft2D {
public:
    Fft2D(int ny, int nx);
    ~Fft2D();
    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    int rows() const { return ny_; }
    int cols() const { return nx_; }
    int spectral_cols() const { return nx_ / 2 + 1; }

    void forward(std::span<const double> in, std::span<cplx> out) const;
    void inverse(std::span<const cplx> in, std::span<double> out) const;

private:
    struct Plans;
    int ny_, nx_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace rbc::fft
