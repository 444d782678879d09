#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the production coefficient tables or solvers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ctb/basis.hpp"
#include "ctb/scheme.hpp"

namespace ctb::oracle {

using Matrix = std::vector<std::vector<double>>;

/// Dense Gaussian elimination; partial pivoting optional.
inline std::vector<double> dense_solve(Matrix a, std::vector<double> b, bool pivot = true) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (pivot) {
            std::size_t best = k;
            for (std::size_t r = k + 1; r < n; ++r) {
                if (std::abs(a[r][k]) > std::abs(a[best][k])) best = r;
            }
            std::swap(a[k], a[best]);
            std::swap(b[k], b[best]);
        }
        if (a[k][k] == 0.0) throw std::runtime_error("singular dense system");
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= a[k][c] * x[c];
        x[k] = s / a[k][k];
    }
    return x;
}

inline double central_first(const std::function<double(double)>& f, double x, double s) {
    return (f(x + s) - f(x - s)) / (2.0 * s);
}

inline double central_second(const std::function<double(double)>& f, double x, double s) {
    return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s);
}

/// Second difference valid at a C2 junction: the third derivative may
/// jump there, which leaves an O(s) term that Richardson extrapolation
/// removes.
inline double junction_second(const std::function<double(double)>& f, double x, double s) {
    return 2.0 * central_second(f, x, 0.5 * s) - central_second(f, x, s);
}

/// I_n(z) from a fixed number of ascending-series terms in long double.
inline long double bessel_i_series(int n, long double z, int terms) {
    long double sum = 0.0L;
    for (int k = 0; k < terms; ++k) {
        long double term = 1.0L;
        for (int j = 1; j <= k; ++j) term *= (z / 2.0L) * (z / 2.0L) / (static_cast<long double>(j) * (j + n));
        long double lead = 1.0L;
        for (int j = 1; j <= n; ++j) lead *= (z / 2.0L) / j;
        sum += lead * term;
    }
    return sum;
}

/// u(x) = sum_j delta_j CTB_j(x) and derivatives, evaluated from the basis.
inline double expand(const std::vector<double>& delta, double x, const UniformPartition& p, int order) {
    double s = 0.0;
    for (int j = -1; j <= p.n_cells() + 1; ++j) {
        const double d = delta[static_cast<std::size_t>(j + 1)];
        s += d * (order == 0 ? ctb_eval(j, x, p) : ctb_deriv(j, x, p, order));
    }
    return s;
}

/// One linearized Crank-Nicolson step assembled as a dense (N+3)x(N+3)
/// system straight from basis evaluations: two Dirichlet rows plus N+1
/// collocation rows.
inline std::vector<double> dense_step(const std::vector<double>& delta_n, const ProblemSpec& prob) {
    const auto p = prob.partition();
    const int n = p.n_cells();
    const auto size = static_cast<std::size_t>(n) + 3;
    Matrix a(size, std::vector<double>(size, 0.0));
    std::vector<double> rhs(size, 0.0);
    const double half = 0.5 * prob.dt;

    for (int j = -1; j <= n + 1; ++j) {
        const auto c = static_cast<std::size_t>(j + 1);
        a[0][c] = ctb_eval(j, p.knot(0), p);
        a[size - 1][c] = ctb_eval(j, p.knot(n), p);
    }
    rhs[0] = prob.boundary_left;
    rhs[size - 1] = prob.boundary_right;

    for (int m = 0; m <= n; ++m) {
        const double x = p.knot(m);
        const double u = expand(delta_n, x, p, 0);
        const double ux = expand(delta_n, x, p, 1);
        const double uxx = expand(delta_n, x, p, 2);
        const auto r = static_cast<std::size_t>(m + 1);
        for (int j = -1; j <= n + 1; ++j) {
            const double b0 = ctb_eval(j, x, p);
            const double b1 = ctb_deriv(j, x, p, 1);
            const double b2 = ctb_deriv(j, x, p, 2);
            a[r][static_cast<std::size_t>(j + 1)] = b0 + half * (b0 * ux + u * b1) - prob.lambda * half * b2;
        }
        rhs[r] = u + prob.lambda * half * uxx;
    }
    return dense_solve(std::move(a), std::move(rhs));
}

}  // namespace ctb::oracle
