#pragma once

// The two benchmark configurations: a decaying sine wave on [0, 1] with
// homogeneous Dirichlet data, and a travelling front between U = 1 and
// U = 0.2.

#include <cmath>
#include <numbers>

#include "ctb/exact.hpp"
#include "ctb/scheme.hpp"

namespace ctb {

inline ProblemSpec sine_problem(double lambda, int n_cells, double dt, double end_time) {
    constexpr double pi = std::numbers::pi;
    ProblemSpec p;
    p.lambda = lambda;
    p.a = 0.0;
    p.b = 1.0;
    p.dt = dt;
    p.n_cells = n_cells;
    p.initial_condition = [](double x) { return std::sin(pi * x); };
    p.initial_slope = [](double x) { return pi * std::cos(pi * x); };
    p.boundary_left = 0.0;
    p.boundary_right = 0.0;
    p.end_time = end_time;
    // sin(pi) is ~1.2e-16, not zero
    p.compatibility_tol = 1e-10;
    return p;
}

/// The front's tails reach 1 and 0.2 only asymptotically, so the initial
/// profile misses the Dirichlet values by up to (2 alpha) / (1 + e^{|eta|})
/// at the ends. The tolerance admits that gap.
inline ProblemSpec traveling_problem(const TravelingWave& w, int n_cells, double dt, double end_time) {
    ProblemSpec p;
    p.lambda = w.lambda;
    p.a = 0.0;
    p.b = 1.0;
    p.dt = dt;
    p.n_cells = n_cells;
    p.initial_condition = [w](double x) { return w(x, 0.0); };
    p.initial_slope = [w](double x) { return w.slope(x, 0.0); };
    p.boundary_left = w.alpha + w.mu;
    p.boundary_right = w.mu - w.alpha;
    p.end_time = end_time;
    p.compatibility_tol = 1e-2;
    return p;
}

}  // namespace ctb
