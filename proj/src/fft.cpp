#include "rbc/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rbc::fft {

struct RowFft::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

RowFft::RowFft(int n) : n_(n), plans_(std::make_unique<Plans>()) {
    if (n < 2) throw std::invalid_argument("RowFft: length must be >= 2");
    std::vector<double> re(n);
    std::vector<cplx> co(n / 2 + 1);
    auto* cptr = reinterpret_cast<fftw_complex*>(co.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->r2c = fftw_plan_dft_r2c_1d(n, re.data(), cptr, flags);
    plans_->c2r = fftw_plan_dft_c2r_1d(n, cptr, re.data(), flags);
    if (!plans_->r2c || !plans_->c2r) throw std::runtime_error("RowFft: FFTW planning failed");
}

RowFft::~RowFft() {
    if (plans_) {
        fftw_destroy_plan(plans_->r2c);
        fftw_destroy_plan(plans_->c2r);
    }
}

void RowFft::forward(std::span<const double> in, std::span<cplx> out, int rows) const {
    const int nk = modes();
    if (in.size() < std::size_t(rows) * n_ || out.size() < std::size_t(rows) * nk)
        throw std::invalid_argument("RowFft::forward: buffer too small");
    std::vector<double> buf(n_);
    const double scale = 1.0 / n_;
    for (int r = 0; r < rows; ++r) {
        std::copy_n(in.data() + std::size_t(r) * n_, n_, buf.data());
        auto* o = reinterpret_cast<fftw_complex*>(out.data() + std::size_t(r) * nk);
        fftw_execute_dft_r2c(plans_->r2c, buf.data(), o);
        for (int m = 0; m < nk; ++m) out[std::size_t(r) * nk + m] *= scale;
    }
}

void RowFft::inverse(std::span<const cplx> in, std::span<double> out, int rows) const {
    const int nk = modes();
    if (in.size() < std::size_t(rows) * nk || out.size() < std::size_t(rows) * n_)
        throw std::invalid_argument("RowFft::inverse: buffer too small");
    std::vector<cplx> buf(nk);
    for (int r = 0; r < rows; ++r) {
        std::copy_n(in.data() + std::size_t(r) * nk, nk, buf.data());
        // c2r ignores the imaginary part of the mean and Nyquist terms.
        fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(buf.data()),
                             out.data() + std::size_t(r) * n_);
    }
}

struct Fft2D::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

Fft2D::Fft2D(int ny, int nx) : ny_(ny), nx_(nx), plans_(std::make_unique<Plans>()) {
    if (ny < 2 || nx < 2) throw std::invalid_argument("Fft2D: sizes must be >= 2");
    std::vector<double> re(std::size_t(ny) * nx);
    std::vector<cplx> co(std::size_t(ny) * (nx / 2 + 1));
    auto* cptr = reinterpret_cast<fftw_complex*>(co.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->r2c = fftw_plan_dft_r2c_2d(ny, nx, re.data(), cptr, flags);
    plans_->c2r = fftw_plan_dft_c2r_2d(ny, nx, cptr, re.data(), flags);
    if (!plans_->r2c || !plans_->c2r) throw std::runtime_error("Fft2D: FFTW planning failed");
}

Fft2D::~Fft2D() {
    if (plans_) {
        fftw_destroy_plan(plans_->r2c);
        fftw_destroy_plan(plans_->c2r);
    }
}

void Fft2D::forward(std::span<const double> in, std::span<cplx> out) const {
    const std::size_t nreal = std::size_t(ny_) * nx_;
    const std::size_t nspec = std::size_t(ny_) * spectral_cols();
    if (in.size() < nreal || out.size() < nspec) throw std::invalid_argument("Fft2D::forward: buffer too small");
    std::vector<double> buf(in.begin(), in.begin() + nreal);
    fftw_execute_dft_r2c(plans_->r2c, buf.data(), reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / double(nreal);
    for (std::size_t i = 0; i < nspec; ++i) out[i] *= scale;
}

void Fft2D::inverse(std::span<const cplx> in, std::span<double> out) const {
    const std::size_t nreal = std::size_t(ny_) * nx_;
    const std::size_t nspec = std::size_t(ny_) * spectral_cols();
    if (in.size() < nspec || out.size() < nreal) throw std::invalid_argument("Fft2D::inverse: buffer too small");
    std::vector<cplx> buf(in.begin(), in.begin() + nspec);
    fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(buf.data()), out.data());
}

}  // namespace rbc::fft
