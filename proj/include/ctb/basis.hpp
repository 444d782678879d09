#pragma once

// Cubic trigonometric B-spline (CTB) basis on a uniform partition.
//
// CTB_i is supported on [x_{i-2}, x_{i+2}] and built from the half-angle
// factors  w_k(x) = sin((x - x_k)/2)  and  p_k(x) = sin((x_k - x)/2),
// normalized by  theta = sin(h/2) sin(h) sin(3h/2).  The same function is
// produced by the trigonometric de Boor recurrence: CTB_i == T^4_{i-2}.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ctb/errors.hpp"

namespace ctb {

/// Uniform grid a = x_0 < x_1 < ... < x_N = b, extended by knots outside
/// [a, b] so that every basis function CTB_{-1} .. CTB_{N+1} has support.
class UniformPartition {
public:
    UniformPartition(double a, double b, int n_cells) : a_(a), b_(b), n_(n_cells) {
        if (n_cells < 3) {
            throw DomainError("partition needs at least 3 cells, got " + std::to_string(n_cells));
        }
        if (!(b > a)) {
            throw DomainError("partition requires b > a");
        }
        h_ = (b - a) / n_cells;
        if (!(h_ < 2.0 * std::numbers::pi / 3.0)) {
            throw DomainError("mesh spacing h must lie in (0, 2*pi/3)");
        }
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int n_cells() const noexcept { return n_; }
    double h() const noexcept { return h_; }

    /// x_i = a + i*h; valid for any integer i, including extension knots.
    double knot(int i) const noexcept { return a_ + i * h_; }

    std::vector<double> knots() const {
        std::vector<double> xs(static_cast<std::size_t>(n_) + 1);
        for (int i = 0; i <= n_; ++i) xs[static_cast<std::size_t>(i)] = knot(i);
        xs.back() = b_;
        return xs;
    }

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

/// Values of CTB_i and its first two derivatives at the knots x_{i-1}, x_i,
/// x_{i+1}. Rows x_{i-1} and x_{i+1} share alpha1 and gamma1; the first
/// derivative flips sign.
struct SchemeCoefficients {
    double alpha1;  // CTB at x_{i-1}, x_{i+1}
    double alpha2;  // CTB at x_i
    double beta1;   // CTB' contribution of delta_{i-1} at x_i
    double beta2;   // CTB' contribution of delta_{i+1} at x_i
    double gamma1;  // CTB'' at x_{i-1}, x_{i+1}
    double gamma2;  // CTB'' at x_i
};

namespace detail {

/// Truncated Taylor jet (f, f', f'') in a single variable.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    friend Jet2 operator+(const Jet2& f, const Jet2& g) { return {f.v + g.v, f.d1 + g.d1, f.d2 + g.d2}; }
    friend Jet2 operator*(const Jet2& f, const Jet2& g) {
        return {f.v * g.v, f.d1 * g.v + f.v * g.d1, f.d2 * g.v + 2.0 * f.d1 * g.d1 + f.v * g.d2};
    }
    friend Jet2 operator*(double s, const Jet2& f) { return {s * f.v, s * f.d1, s * f.d2}; }
};

/// sin((u - c)/2) as a jet in u.
inline Jet2 omega(double u, double c) {
    const double s = std::sin(0.5 * (u - c));
    const double co = std::cos(0.5 * (u - c));
    return {s, 0.5 * co, -0.25 * s};
}

/// sin((c - u)/2) as a jet in u.
inline Jet2 phi(double u, double c) {
    const double s = std::sin(0.5 * (c - u));
    const double co = std::cos(0.5 * (c - u));
    return {s, -0.5 * co, -0.25 * s};
}

inline double theta(double h) { return std::sin(0.5 * h) * std::sin(h) * std::sin(1.5 * h); }

/// One polynomial-like piece of CTB centred at 0, extended to any u.
/// piece 0..3 covers [-2h,-h], [-h,0], [0,h], [h,2h].
inline Jet2 branch(int piece, double u, double h) {
    const auto w = [&](int k) { return omega(u, k * h); };
    const auto p = [&](int k) { return phi(u, k * h); };
    Jet2 r;
    switch (piece) {
        case 0: r = w(-2) * w(-2) * w(-2); break;
        case 1: r = w(-2) * (w(-2) * p(0) + p(1) * w(-1)) + p(2) * w(-1) * w(-1); break;
        case 2: r = w(-2) * p(1) * p(1) + p(2) * (w(-1) * p(1) + p(2) * w(0)); break;
        case 3: r = p(2) * p(2) * p(2); break;
        default: return {};
    }
    return (1.0 / theta(h)) * r;
}

/// Piece containing u = x - x_i, or -1 outside the closed support.
inline int piece_of(double u, double h) {
    if (u < -2.0 * h || u > 2.0 * h) return -1;
    const int k = static_cast<int>(std::floor(u / h)) + 2;
    return k > 3 ? 3 : k;
}

inline void check_index(int i, const UniformPartition& p) {
    if (i < -1 || i > p.n_cells() + 1) {
        throw DomainError("basis index " + std::to_string(i) + " outside [-1, N+1]");
    }
}

inline Jet2 ctb_jet(int i, double x, const UniformPartition& p) {
    check_index(i, p);
    const double u = x - p.knot(i);
    const int piece = piece_of(u, p.h());
    return piece < 0 ? Jet2{} : branch(piece, u, p.h());
}

}  // namespace detail

/// Closed-form CTB_i(x); zero outside [x_{i-2}, x_{i+2}].
inline double ctb_eval(int i, double x, const UniformPartition& p) { return detail::ctb_jet(i, x, p).v; }

/// Analytic first or second derivative of CTB_i at x.
inline double ctb_deriv(int i, double x, const UniformPartition& p, int order) {
    const auto j = detail::ctb_jet(i, x, p);
    switch (order) {
        case 1: return j.d1;
        case 2: return j.d2;
        default: throw DomainError("derivative order must be 1 or 2");
    }
}

/// Evaluates one named piece (0..3) of CTB_i and its derivatives at x,
/// regardless of whether x lies in that piece's interval. Used to compare
/// the left and right pieces at a junction knot.
inline std::array<double, 3> ctb_branch(int i, int piece, double x, const UniformPartition& p) {
    detail::check_index(i, p);
    if (piece < 0 || piece > 3) throw DomainError("piece must be in 0..3");
    const auto j = detail::branch(piece, x - p.knot(i), p.h());
    return {j.v, j.d1, j.d2};
}

/// CTB_i == T^4_{i - kRecurrenceShift} with unit proportionality constant.
inline constexpr int kRecurrenceShift = 2;

/// Order-k trigonometric B-spline T_i^k(x) from the order-1 indicators of
/// [x_j, x_{j+1}) by the two-term recurrence.
inline double ctb_eval_recurrence(int i, int k, double x, const UniformPartition& p) {
    if (k < 1) throw DomainError("recurrence order must be >= 1");
    // t[j] holds T_{i+j}^{order}, shrinking by one entry per order.
    std::vector<double> t(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        t[static_cast<std::size_t>(j)] = (x >= p.knot(i + j) && x < p.knot(i + j + 1)) ? 1.0 : 0.0;
    }
    for (int order = 2; order <= k; ++order) {
        for (int j = 0; j + order <= k; ++j) {
            const int m = i + j;
            const double den_left = std::sin(0.5 * (p.knot(m + order - 1) - p.knot(m)));
            const double den_right = std::sin(0.5 * (p.knot(m + order) - p.knot(m + 1)));
            if (std::abs(den_left) < 1e-12 || std::abs(den_right) < 1e-12) {
                throw DomainError("vanishing denominator in trigonometric recurrence");
            }
            const auto ju = static_cast<std::size_t>(j);
            t[ju] = std::sin(0.5 * (x - p.knot(m))) / den_left * t[ju] +
                    std::sin(0.5 * (p.knot(m + order) - x)) / den_right * t[ju + 1];
        }
    }
    return t[0];
}

/// Knot-value constants for spacing h. gamma2 is taken from the analytic
/// second derivative of the closed form at the centre knot.
inline SchemeCoefficients knot_coefficients(double h) {
    if (!(h > 0.0 && h < 2.0 * std::numbers::pi / 3.0)) {
        throw DomainError("knot_coefficients requires 0 < h < 2*pi/3");
    }
    const double s_half = std::sin(0.5 * h);
    const double csc_3half = 1.0 / std::sin(1.5 * h);
    SchemeCoefficients c{};
    c.alpha1 = s_half * s_half / std::sin(h) * csc_3half;
    c.alpha2 = 2.0 / (1.0 + 2.0 * std::cos(h));
    c.beta1 = -0.75 * csc_3half;
    c.beta2 = 0.75 * csc_3half;
    c.gamma1 = 3.0 * (1.0 + 3.0 * std::cos(h)) / (s_half * s_half) /
               (16.0 * (2.0 * std::cos(0.5 * h) + std::cos(1.5 * h)));
    c.gamma2 = detail::branch(2, 0.0, h).d2;
    return c;
}

}  // namespace ctb
