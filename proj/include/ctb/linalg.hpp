#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ctb/errors.hpp"

namespace ctb {

/// sub[k] couples row k+1 to column k; sup[k] couples row k to column k+1.
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;
    std::vector<double> rhs;

    std::size_t size() const noexcept { return diag.size(); }
};

/// Row-major band storage: row r holds entries for columns r-2 .. r+2.
struct BandedSystem {
    static constexpr int kHalfWidth = 2;
    using Row = std::array<double, 2 * kHalfWidth + 1>;

    explicit BandedSystem(std::size_t n) : rows(n, Row{}), rhs(n, 0.0) {}

    std::size_t size() const noexcept { return rows.size(); }

    /// Entry A(r, c); |c - r| must not exceed the half-width.
    double& at(std::size_t r, std::size_t c) {
        return rows[r][static_cast<std::size_t>(static_cast<long>(c) - static_cast<long>(r) + kHalfWidth)];
    }
    double at(std::size_t r, std::size_t c) const {
        return rows[r][static_cast<std::size_t>(static_cast<long>(c) - static_cast<long>(r) + kHalfWidth)];
    }

    std::vector<Row> rows;
    std::vector<double> rhs;
};

namespace detail {

inline void check_pivot(double pivot, std::size_t row) {
    if (pivot == 0.0 || !std::isfinite(pivot)) {
        throw SolverError("zero pivot in forward elimination", row);
    }
}

}  // namespace detail

/// Thomas algorithm without pivoting.
inline std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    if (n == 0 || sys.rhs.size() != n || sys.sub.size() + 1 != n || sys.sup.size() + 1 != n) {
        throw DomainError("tridiagonal system has inconsistent lengths");
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> x(n);

    detail::check_pivot(sys.diag[0], 0);
    if (n > 1) c[0] = sys.sup[0] / sys.diag[0];
    x[0] = sys.rhs[0] / sys.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
        detail::check_pivot(m, i);
        if (i + 1 < n) c[i] = sys.sup[i] / m;
        x[i] = (sys.rhs[i] - sys.sub[i - 1] * x[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

/// Gaussian elimination restricted to a pentadiagonal band, no pivoting.
/// Without row exchanges no fill-in leaves the band.
inline std::vector<double> banded_solve(BandedSystem sys) {
    constexpr std::size_t w = BandedSystem::kHalfWidth;
    const std::size_t n = sys.size();
    if (n == 0 || sys.rhs.size() != n) {
        throw DomainError("banded system has inconsistent lengths");
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double pivot = sys.at(k, k);
        detail::check_pivot(pivot, k);
        const std::size_t last_row = std::min(n - 1, k + w);
        const std::size_t last_col = std::min(n - 1, k + w);
        for (std::size_t r = k + 1; r <= last_row; ++r) {
            const double f = sys.at(r, k) / pivot;
            if (f == 0.0) continue;
            sys.at(r, k) = 0.0;
            for (std::size_t c = k + 1; c <= last_col; ++c) {
                sys.at(r, c) -= f * sys.at(k, c);
            }
            sys.rhs[r] -= f * sys.rhs[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = sys.rhs[k];
        const std::size_t last_col = std::min(n - 1, k + w);
        for (std::size_t c = k + 1; c <= last_col; ++c) s -= sys.at(k, c) * x[c];
        x[k] = s / sys.at(k, k);
    }
    return x;
}

/// ||A x - rhs||_inf for a tridiagonal system.
inline double residual_inf(const TridiagonalSystem& sys, std::span<const double> x) {
    const std::size_t n = sys.size();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = sys.diag[i] * x[i];
        if (i > 0) ax += sys.sub[i - 1] * x[i - 1];
        if (i + 1 < n) ax += sys.sup[i] * x[i + 1];
        r = std::max(r, std::abs(ax - sys.rhs[i]));
    }
    return r;
}

inline double residual_inf(const BandedSystem& sys, std::span<const double> x) {
    constexpr std::size_t w = BandedSystem::kHalfWidth;
    const std::size_t n = sys.size();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = 0.0;
        const std::size_t lo = i >= w ? i - w : 0;
        const std::size_t hi = std::min(n - 1, i + w);
        for (std::size_t c = lo; c <= hi; ++c) ax += sys.at(i, c) * x[c];
        r = std::max(r, std::abs(ax - sys.rhs[i]));
    }
    return r;
}

}  // namespace ctb
