#pragma once

// CTB collocation of U_t + U U_x - lambda U_xx = 0 with Crank-Nicolson in
// time and the Rubin-Graves product linearization
//
//   (U U_x)^{n+1} ~ U^{n+1} U_x^n + U^n U_x^{n+1} - U^n U_x^n,
//
// so every step is one tridiagonal solve for delta^{n+1} once the two
// phantom parameters delta_{-1}, delta_{N+1} are eliminated through the
// Dirichlet data.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ctb/basis.hpp"
#include "ctb/errors.hpp"
#include "ctb/linalg.hpp"

namespace ctb {

using ScalarFunction = std::function<double(double)>;

struct ProblemSpec {
    double lambda = 1.0;
    double a = 0.0;
    double b = 1.0;
    double dt = 1e-4;
    int n_cells = 40;
    ScalarFunction initial_condition;
    ScalarFunction initial_slope;  // d/dx of initial_condition, for the end conditions
    double boundary_left = 0.0;
    double boundary_right = 0.0;
    double end_time = 0.0;
    // |f(a) - U_a| and |f(b) - U_b| must not exceed this.
    double compatibility_tol = 1e-10;

    UniformPartition partition() const { return {a, b, n_cells}; }

    /// Throws ConfigError naming the first violated field.
    void validate() const {
        if (!(lambda > 0.0)) throw ConfigError("lambda", "must be > 0");
        if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
        if (!(end_time >= 0.0)) throw ConfigError("t_end", "must be >= 0");
        if (n_cells < 3) throw ConfigError("n_cells", "must be >= 3");
        if (!(b > a)) throw ConfigError("b", "must exceed a");
        if (!((b - a) / n_cells < 2.0 * std::numbers::pi / 3.0)) {
            throw ConfigError("n_cells", "mesh spacing must be below 2*pi/3");
        }
        if (!initial_condition) throw ConfigError("initial_condition", "missing");
        if (!initial_slope) throw ConfigError("initial_slope", "missing");
        if (!(std::abs(initial_condition(a) - boundary_left) <= compatibility_tol)) {
            throw ConfigError("boundary_left", "incompatible with the initial condition at x = a");
        }
        if (!(std::abs(initial_condition(b) - boundary_right) <= compatibility_tol)) {
            throw ConfigError("boundary_right", "incompatible with the initial condition at x = b");
        }
    }
};

/// Spline parameters delta_{-1} .. delta_{N+1} at one time level.
struct CoefficientVector {
    std::vector<double> delta;
    double time = 0.0;

    int n_cells() const noexcept { return static_cast<int>(delta.size()) - 3; }

    /// delta_i for i in -1 .. N+1.
    double operator[](int i) const { return delta[static_cast<std::size_t>(i + 1)]; }
    double& operator[](int i) { return delta[static_cast<std::size_t>(i + 1)]; }
};

/// U, U', U'' at the knots x_0 .. x_N.
struct NodalState {
    std::vector<double> u;
    std::vector<double> ux;
    std::vector<double> uxx;
    double time = 0.0;
};

/// Collocation rows m = 0..N before boundary elimination. Row m couples
/// delta_{m-1}, delta_m, delta_{m+1} (stencil[0..2]) to rhs[m].
struct CollocationSystem {
    std::vector<std::array<double, 3>> stencil;
    std::vector<double> rhs;

    std::size_t rows() const noexcept { return rhs.size(); }
};

inline NodalState nodal_values(const CoefficientVector& c, const SchemeCoefficients& sc) {
    const int n = c.n_cells();
    NodalState s;
    s.time = c.time;
    s.u.resize(static_cast<std::size_t>(n) + 1);
    s.ux.resize(s.u.size());
    s.uxx.resize(s.u.size());
    for (int i = 0; i <= n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        s.u[k] = sc.alpha1 * c[i - 1] + sc.alpha2 * c[i] + sc.alpha1 * c[i + 1];
        s.ux[k] = sc.beta1 * c[i - 1] + sc.beta2 * c[i + 1];
        s.uxx[k] = sc.gamma1 * c[i - 1] + sc.gamma2 * c[i] + sc.gamma1 * c[i + 1];
    }
    return s;
}

/// delta^0 from interpolation of U(x,0) at every knot plus the slope of the
/// initial condition at both ends: an (N+3)x(N+3) banded system.
inline CoefficientVector initialize_coefficients(const ProblemSpec& p, const UniformPartition& part,
                                                 const SchemeCoefficients& sc) {
    const int n = part.n_cells();
    const auto size = static_cast<std::size_t>(n) + 3;
    BandedSystem sys(size);

    sys.at(0, 0) = sc.beta1;
    sys.at(0, 2) = sc.beta2;
    sys.rhs[0] = p.initial_slope(part.a());
    for (int i = 0; i <= n; ++i) {
        const auto r = static_cast<std::size_t>(i) + 1;
        sys.at(r, r - 1) = sc.alpha1;
        sys.at(r, r) = sc.alpha2;
        sys.at(r, r + 1) = sc.alpha1;
        sys.rhs[r] = p.initial_condition(i == n ? part.b() : part.knot(i));
    }
    sys.at(size - 1, size - 3) = sc.beta1;
    sys.at(size - 1, size - 1) = sc.beta2;
    sys.rhs[size - 1] = p.initial_slope(part.b());

    return CoefficientVector{banded_solve(std::move(sys)), 0.0};
}

/// Collocates the linearized Crank-Nicolson equation at x_0 .. x_N:
///
///   U^{n+1} + dt/2 (U^{n+1} U_x^n + U^n U_x^{n+1}) - lambda dt/2 U_xx^{n+1}
///       = U^n + lambda dt/2 U_xx^n
///
/// with U^n and U_x^n at the row's knot frozen from delta^n.
inline CollocationSystem assemble_step(const CoefficientVector& c, const ProblemSpec& p,
                                       const SchemeCoefficients& sc) {
    const int n = c.n_cells();
    const double half_dt = 0.5 * p.dt;
    const double diff = p.lambda * half_dt;
    CollocationSystem sys;
    sys.stencil.resize(static_cast<std::size_t>(n) + 1);
    sys.rhs.resize(sys.stencil.size());
    for (int m = 0; m <= n; ++m) {
        const double u = sc.alpha1 * c[m - 1] + sc.alpha2 * c[m] + sc.alpha1 * c[m + 1];
        const double ux = sc.beta1 * c[m - 1] + sc.beta2 * c[m + 1];
        const auto k = static_cast<std::size_t>(m);
        sys.stencil[k] = {
            sc.alpha1 + half_dt * (sc.alpha1 * ux + sc.beta1 * u) - diff * sc.gamma1,
            sc.alpha2 + half_dt * (sc.alpha2 * ux) - diff * sc.gamma2,
            sc.alpha1 + half_dt * (sc.alpha1 * ux + sc.beta2 * u) - diff * sc.gamma1,
        };
        sys.rhs[k] = (sc.alpha1 + diff * sc.gamma1) * c[m - 1] + (sc.alpha2 + diff * sc.gamma2) * c[m] +
                     (sc.alpha1 + diff * sc.gamma1) * c[m + 1];
    }
    return sys;
}

/// Substitutes delta_{-1} = (U_a - alpha2 delta_0 - alpha1 delta_1) / alpha1
/// and the mirror expression for delta_{N+1}, leaving an (N+1)x(N+1)
/// tridiagonal system in delta_0 .. delta_N.
inline TridiagonalSystem eliminate_boundary(const CollocationSystem& sys, const ProblemSpec& p,
                                            const SchemeCoefficients& sc) {
    if (sc.alpha1 == 0.0) throw DomainError("alpha1 vanishes; cannot eliminate boundary parameters");
    const std::size_t n = sys.rows();
    TridiagonalSystem t;
    t.diag.resize(n);
    t.sub.resize(n - 1);
    t.sup.resize(n - 1);
    t.rhs = sys.rhs;
    for (std::size_t m = 0; m < n; ++m) {
        t.diag[m] = sys.stencil[m][1];
        if (m > 0) t.sub[m - 1] = sys.stencil[m][0];
        if (m + 1 < n) t.sup[m] = sys.stencil[m][2];
    }
    const double ratio = sc.alpha2 / sc.alpha1;

    const auto& first = sys.stencil.front();
    t.diag[0] -= first[0] * ratio;
    t.sup[0] -= first[0];
    t.rhs[0] -= first[0] * p.boundary_left / sc.alpha1;

    const auto& last = sys.stencil.back();
    t.diag[n - 1] -= last[2] * ratio;
    t.sub[n - 2] -= last[2];
    t.rhs[n - 1] -= last[2] * p.boundary_right / sc.alpha1;
    return t;
}

/// Recovers delta_{-1} and delta_{N+1} from the Dirichlet data.
inline void reconstruct_phantoms(CoefficientVector& c, const ProblemSpec& p, const SchemeCoefficients& sc) {
    const int n = c.n_cells();
    c[-1] = (p.boundary_left - sc.alpha2 * c[0] - sc.alpha1 * c[1]) / sc.alpha1;
    c[n + 1] = (p.boundary_right - sc.alpha1 * c[n - 1] - sc.alpha2 * c[n]) / sc.alpha1;
}

/// One time step: assemble, eliminate, one Thomas solve, reconstruct.
inline CoefficientVector advance(const CoefficientVector& c, const ProblemSpec& p, const SchemeCoefficients& sc) {
    const auto interior = thomas_solve(eliminate_boundary(assemble_step(c, p, sc), p, sc));
    CoefficientVector next;
    next.time = c.time + p.dt;
    next.delta.resize(c.delta.size());
    std::copy(interior.begin(), interior.end(), next.delta.begin() + 1);
    reconstruct_phantoms(next, p, sc);
    return next;
}

/// Owns the state of one run. Not shareable between threads mid-run.
class CollocationSolver {
public:
    explicit CollocationSolver(ProblemSpec p)
        : problem_(validated(std::move(p))),
          partition_(problem_.partition()),
          coeffs_(knot_coefficients(partition_.h())),
          state_(initialize_coefficients(problem_, partition_, coeffs_)) {}

    const ProblemSpec& problem() const noexcept { return problem_; }
    const UniformPartition& partition() const noexcept { return partition_; }
    const SchemeCoefficients& coefficients() const noexcept { return coeffs_; }
    const CoefficientVector& state() const noexcept { return state_; }
    long steps_taken() const noexcept { return steps_; }

    void step() {
        ++steps_;
        state_ = advance(state_, problem_, coeffs_);
        // Multiply rather than accumulate so sample times stay on the grid.
        state_.time = static_cast<double>(steps_) * problem_.dt;
    }

    NodalState nodal() const { return nodal_values(state_, coeffs_); }

private:
    static ProblemSpec validated(ProblemSpec p) {
        p.validate();
        return p;
    }

    ProblemSpec problem_;
    UniformPartition partition_;
    SchemeCoefficients coeffs_;
    CoefficientVector state_;
    long steps_ = 0;
};

/// Number of steps of size dt that land on t, or ConfigError when t is not
/// within 1e-9 dt of the step grid.
inline long steps_to(double t, double dt, const char* field = "sample_times") {
    const double k = t / dt;
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-9) {
        throw ConfigError(field, "time " + std::to_string(t) + " is not a multiple of dt");
    }
    return static_cast<long>(r);
}

/// Marches to t_end and returns the nodal state at each sample time (or
/// just at t_end when no sample times are given).
inline std::map<double, NodalState> solve_to_time(const ProblemSpec& p, double t_end,
                                                  const std::vector<double>& sample_times) {
    const long total = steps_to(t_end, p.dt, "t_end");
    std::vector<double> times = sample_times.empty() ? std::vector<double>{t_end} : sample_times;
    std::vector<long> marks;
    marks.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const long s = steps_to(times[k], p.dt);
        if (s < 0 || s > total) throw ConfigError("sample_times", "sample time outside [0, t_end]");
        if (k > 0 && s <= marks.back()) throw ConfigError("sample_times", "must be strictly ascending");
        marks.push_back(s);
    }

    CollocationSolver solver(p);
    std::map<double, NodalState> out;
    std::size_t next = 0;
    const auto record = [&] {
        while (next < marks.size() && marks[next] == solver.steps_taken()) {
            auto s = solver.nodal();
            s.time = times[next];
            out.emplace(times[next], std::move(s));
            ++next;
        }
    };
    record();
    while (solver.steps_taken() < total) {
        solver.step();
        record();
    }
    return out;
}

inline std::map<double, NodalState> solve_to_time(const ProblemSpec& p, const UniformPartition& part, double t_end,
                                                  const std::vector<double>& sample_times) {
    if (part.n_cells() != p.n_cells || part.a() != p.a || part.b() != p.b) {
        throw ConfigError("n_cells", "partition does not match the problem grid");
    }
    return solve_to_time(p, t_end, sample_times);
}

}  // namespace ctb
