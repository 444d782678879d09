#pragma once

// Reference solutions of U_t + U U_x - lambda U_xx = 0:
//  - the Cole-Hopf Fourier-Bessel series for U(x,0) = sin(pi x), U(0,t) = U(1,t) = 0
//  - the travelling front (alpha + mu + (mu - alpha) e^eta) / (1 + e^eta),
//    eta = alpha (x - mu t - gamma) / lambda

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctb/errors.hpp"

namespace ctb {

struct SeriesControl {
    double abs_tol = 1e-12;
    int max_terms = 500;
};

namespace detail {

// Ascending series sum_k (z/2)^{2k+n} / (k! (k+n)!); every term is positive.
inline long double bessel_i_series(int n, long double z) {
    const long double q = 0.25L * z * z;
    long double term = std::exp(n * std::log(0.5L * z) - std::lgamma(static_cast<long double>(n) + 1.0L));
    long double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= q / (static_cast<long double>(k) * static_cast<long double>(k + n));
        sum += term;
        if (term < sum * std::numeric_limits<long double>::epsilon()) break;
    }
    return sum;
}

inline int miller_start(int max_order, double z) {
    const double m = std::max(static_cast<double>(max_order), z);
    return 2 * (static_cast<int>(m) + 20 + static_cast<int>(std::sqrt(40.0 * m)));
}

// Backward recurrence I_{k-1} = I_{k+1} + (2k/z) I_k from a start index far
// above max(order, z). Returns unnormalized values for orders 0..max_order
// together with the identity sum I_0 + 2 sum_{k>=1} I_k, all on one scale.
struct MillerSequence {
    std::vector<double> values;
    double norm_sum = 0.0;
};

inline MillerSequence miller_backward(int max_order, double z) {
    constexpr double kRescaleAbove = 1e250;
    const int start = miller_start(max_order, z);
    MillerSequence out;
    out.values.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    double next = 0.0;  // I_{k+1}
    double cur = 1e-300;  // I_k
    double sum = 0.0;   // 2 * sum of I_k for k >= 1 seen so far
    for (int k = start; k >= 1; --k) {
        const double prev = next + (2.0 * k / z) * cur;
        next = cur;
        cur = prev;
        if (k - 1 <= max_order) out.values[static_cast<std::size_t>(k - 1)] = cur;
        if (k <= max_order) out.values[static_cast<std::size_t>(k)] = next;
        sum += 2.0 * next;
        if (std::abs(cur) > kRescaleAbove) {
            const double s = 1.0 / kRescaleAbove;
            cur *= s;
            next *= s;
            sum *= s;
            for (auto& v : out.values) v *= s;
        }
    }
    out.norm_sum = cur + sum;
    return out;
}

}  // namespace detail

/// Modified Bessel function of the first kind I_n(z), z >= 0.
/// Throws std::overflow_error when I_n(z) is not representable.
inline double bessel_i(int order, double z) {
    if (order < 0) throw DomainError("bessel_i requires a nonnegative order");
    if (!(z >= 0.0)) throw DomainError("bessel_i requires z >= 0");
    if (z == 0.0) return order == 0 ? 1.0 : 0.0;
    if (z <= 30.0) {
        return static_cast<double>(detail::bessel_i_series(order, static_cast<long double>(z)));
    }
    // e^z = I_0(z) + 2 sum_{k>=1} I_k(z)
    if (z > std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("bessel_i(" + std::to_string(order) + ", z) overflows for z = " + std::to_string(z));
    }
    const auto seq = detail::miller_backward(order, z);
    return std::exp(z) * (seq.values[static_cast<std::size_t>(order)] / seq.norm_sum);
}

/// I_k(z) / I_0(z) for k = 0..max_order, without forming either function.
inline std::vector<double> bessel_i_ratios(int max_order, double z) {
    if (max_order < 0) throw DomainError("bessel_i_ratios requires max_order >= 0");
    if (!(z > 0.0)) throw DomainError("bessel_i_ratios requires z > 0");
    auto seq = detail::miller_backward(max_order, z);
    const double i0 = seq.values[0];
    for (auto& v : seq.values) v /= i0;
    return std::move(seq.values);
}

inline double bessel_i_ratio(int order, double z) {
    if (order < 1) throw DomainError("bessel_i_ratio requires order >= 1");
    return bessel_i_ratios(order, z)[static_cast<std::size_t>(order)];
}

/// Cole-Hopf series for the sine initial condition on [0, 1], with the
/// Bessel ratios for one viscosity precomputed.
class SineWaveSeries {
public:
    explicit SineWaveSeries(double lambda, SeriesControl ctl = {}) : lambda_(lambda), ctl_(ctl) {
        if (!(lambda > 0.0)) throw DomainError("sine-wave series requires lambda > 0");
        if (!(ctl.abs_tol > 0.0) || ctl.max_terms < 1) throw DomainError("invalid series control");
        ratios_ = bessel_i_ratios(ctl.max_terms + 1, 1.0 / (2.0 * std::numbers::pi * lambda));
    }

    double lambda() const noexcept { return lambda_; }

    /// U(x, t). At t = 0 this is sin(pi x) directly.
    double operator()(double x, double t) const {
        constexpr double pi = std::numbers::pi;
        if (t < 0.0) throw DomainError("sine-wave series requires t >= 0");
        if (t == 0.0) return std::sin(pi * x);
        const double decay = pi * pi * lambda_ * t;
        const double num_scale = 4.0 * pi * lambda_;
        double num = 0.0;
        double den = 1.0;
        double den_abs = 1.0;
        const auto magnitude = [&](int j) {
            return ratios_[static_cast<std::size_t>(j)] * std::exp(-decay * j * j);
        };
        for (int j = 1; j <= ctl_.max_terms; ++j) {
            const double m = magnitude(j);
            num += num_scale * j * m * std::sin(j * pi * x);
            den += 2.0 * m * std::cos(j * pi * x);
            den_abs += 2.0 * m;
            // Stop on the decaying tail of both sums, ignoring the trig factors.
            const double m_next = magnitude(j + 1);
            const double tol = ctl_.abs_tol * std::abs(den);
            const bool small = num_scale * j * m < tol && 2.0 * m < tol;
            const bool decaying = (j + 1) * m_next <= j * m;
            if (small && decaying) {
                // Near x = 1 at early times the alternating denominator cancels
                // to many orders below its terms.
                if (den_abs > kMaxCancellation * std::abs(den)) return heat_kernel(x, t);
                return num / den;
            }
        }
        throw ConvergenceError("sine-wave series did not converge within " + std::to_string(ctl_.max_terms) +
                               " terms (lambda = " + std::to_string(lambda_) + ", t = " + std::to_string(t) + ")");
    }

    /// Same solution from the heat-kernel integral of the Cole-Hopf initial
    /// data exp(-(1 - cos(pi s)) / (2 pi lambda)); every weight is positive,
    /// so nothing cancels.
    double heat_kernel(double x, double t) const {
        constexpr double pi = std::numbers::pi;
        if (!(t > 0.0)) throw DomainError("heat-kernel form requires t > 0");
        const double spread = 4.0 * lambda_ * t;
        const double z = 1.0 / (2.0 * pi * lambda_);
        // Far enough out that the kernel beats the full range of the data.
        const double half_width = std::sqrt(spread * (4.0 * z + 80.0));
        const double step = std::min(std::sqrt(0.5 * spread), std::sqrt(lambda_)) / 12.0;
        const int n = static_cast<int>(std::ceil(half_width / step));
        const auto exponent = [&](double s) { return -(x - s) * (x - s) / spread - z * (1.0 - std::cos(pi * s)); };
        double peak = -std::numeric_limits<double>::infinity();
        for (int k = -n; k <= n; ++k) peak = std::max(peak, exponent(x + k * step));
        double num = 0.0;
        double den = 0.0;
        for (int k = -n; k <= n; ++k) {
            const double s = x + k * step;
            const double w = std::exp(exponent(s) - peak);
            num += (x - s) * w;
            den += w;
        }
        return num / (t * den);
    }

private:
    static constexpr double kMaxCancellation = 1e3;

    double lambda_;
    SeriesControl ctl_;
    std::vector<double> ratios_;
};

inline double sine_wave_exact(double x, double t, double lambda, SeriesControl ctl = {}) {
    if (t == 0.0) return std::sin(std::numbers::pi * x);
    return SineWaveSeries(lambda, ctl)(x, t);
}

/// Travelling-front solution; evaluated in a form that never overflows.
struct TravelingWave {
    double alpha = 0.4;
    double mu = 0.6;
    double gamma = 0.125;
    double lambda = 0.01;

    double eta(double x, double t) const { return alpha * (x - mu * t - gamma) / lambda; }

    double operator()(double x, double t) const {
        const double e = eta(x, t);
        if (e > 0.0) {
            const double q = std::exp(-e);  // -> mu - alpha as e -> +inf
            return ((alpha + mu) * q + (mu - alpha)) / (q + 1.0);
        }
        const double q = std::exp(e);  // -> alpha + mu as e -> -inf
        return (alpha + mu + (mu - alpha) * q) / (1.0 + q);
    }

    /// dU/dx = -2 alpha (alpha/lambda) e^eta / (1 + e^eta)^2
    double slope(double x, double t) const {
        const double q = std::exp(-std::abs(eta(x, t)));
        return -2.0 * alpha * (alpha / lambda) * q / ((1.0 + q) * (1.0 + q));
    }
};

inline double traveling_wave_exact(double x, double t, double alpha, double mu, double gamma, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("travelling wave requires lambda > 0");
    return TravelingWave{alpha, mu, gamma, lambda}(x, t);
}

}  // namespace ctb
