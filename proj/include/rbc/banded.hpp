#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rbc {

/// Thomas algorithm for a tridiagonal system with real coefficients.
/// lower[i] multiplies x[i-1], upper[i] multiplies x[i+1]; lower[0] and
/// upper[n-1] are ignored. The right-hand side may be real or complex.
template <class T>
std::vector<T> solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                                 const std::vector<double>& upper, std::vector<T> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: size mismatch");
    if (n == 0) return rhs;
    std::vector<double> c(n);
    double beta = diag[0];
    if (beta == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        c[i - 1] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * c[i - 1];
        if (beta == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
}

/// LU factorization of a real banded matrix without pivoting. Intended for
/// the symmetric positive definite operators of the vertical solves.
class BandedLU {
public:
    BandedLU() = default;
    /// `bands[d + kl]` holds diagonal d (d = -kl..ku), entry i is A(i, i+d).
    BandedLU(int n, int kl, int ku, const std::vector<std::vector<double>>& bands) : n_(n), kl_(kl), ku_(ku) {
        if (int(bands.size()) != kl + ku + 1) throw std::invalid_argument("BandedLU: wrong number of bands");
        a_.assign(std::size_t(n) * width(), 0.0);
        for (int d = -kl; d <= ku; ++d)
            for (int i = 0; i < n; ++i)
                if (i + d >= 0 && i + d < n) at(i, i + d) = bands[d + kl].at(i);
        for (int k = 0; k < n; ++k) {
            const double piv = at(k, k);
            if (!(std::abs(piv) > 0.0) || !std::isfinite(piv)) throw std::runtime_error("BandedLU: singular factorization");
            for (int i = k + 1; i <= std::min(n - 1, k + kl); ++i) {
                const double l = at(i, k) / piv;
                at(i, k) = l;
                for (int j = k + 1; j <= std::min(n - 1, k + ku); ++j) at(i, j) -= l * at(k, j);
            }
        }
    }

    int size() const { return n_; }

    template <class T>
    void solve_in_place(std::vector<T>& x) const {
        if (int(x.size()) != n_) throw std::invalid_argument("BandedLU::solve: size mismatch");
        for (int i = 0; i < n_; ++i)
            for (int k = std::max(0, i - kl_); k < i; ++k) x[i] -= at(i, k) * x[k];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j <= std::min(n_ - 1, i + ku_); ++j) x[i] -= at(i, j) * x[j];
            x[i] /= at(i, i);
        }
    }

private:
    int width() const { return kl_ + ku_ + 1; }
    double& at(int i, int j) { return a_[std::size_t(i) * width() + (j - i + kl_)]; }
    double at(int i, int j) const { return a_[std::size_t(i) * width() + (j - i + kl_)]; }

    int n_ = 0, kl_ = 0, ku_ = 0;
    std::vector<double> a_;
};

}  // namespace rbc
