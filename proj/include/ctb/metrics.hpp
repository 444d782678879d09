#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctb/basis.hpp"
#include "ctb/errors.hpp"
#include "ctb/scheme.hpp"

namespace ctb {

using SpaceTimeFunction = std::function<double(double x, double t)>;

struct PointError {
    double x;
    double t;
    double numerical;
    double exact;
    double abs_error;
};

struct ErrorReport {
    double l_inf = 0.0;
    double l2 = 0.0;  // sqrt(h * sum |e_i|^2) over the knots
    std::vector<PointError> pointwise;
};

inline ErrorReport error_norms(const NodalState& num, const SpaceTimeFunction& exact, double t,
                               const UniformPartition& part) {
    if (num.u.size() != static_cast<std::size_t>(part.n_cells()) + 1) {
        throw DomainError("nodal state does not match the partition");
    }
    ErrorReport r;
    r.pointwise.reserve(num.u.size());
    double sq = 0.0;
    const auto xs = part.knots();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = exact(xs[i], t);
        const double err = std::abs(num.u[i] - e);
        r.pointwise.push_back({xs[i], t, num.u[i], e, err});
        r.l_inf = std::max(r.l_inf, err);
        sq += err * err;
    }
    r.l2 = std::sqrt(part.h() * sq);
    return r;
}

/// Index of the knot within 1e-9 of x.
inline std::size_t knot_index(double x, const UniformPartition& part) {
    const double s = (x - part.a()) / part.h();
    const long i = std::lround(s);
    if (i < 0 || i > part.n_cells() || std::abs(part.knot(static_cast<int>(i)) - x) > 1e-9) {
        throw ConfigError("sample_xs", "x = " + std::to_string(x) + " is not a knot");
    }
    return static_cast<std::size_t>(i);
}

struct TableRow {
    double x;
    double t;
    double present;
    double exact;
};

/// Rows ordered by x, then by t, as in a comparison table.
inline std::vector<TableRow> table_rows(const std::map<double, NodalState>& states, const std::vector<double>& sample_xs,
                                        const SpaceTimeFunction& exact, const UniformPartition& part) {
    std::vector<TableRow> rows;
    for (double x : sample_xs) {
        const std::size_t i = knot_index(x, part);
        for (const auto& [t, s] : states) rows.push_back({x, t, s.u[i], exact(x, t)});
    }
    return rows;
}

inline std::string format_fixed(double v, int decimals) {
    // Avoid printing "-0.00000" for tiny negatives.
    if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string format_table(const std::vector<TableRow>& rows, int decimals) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%8s %8s %12s %12s\n", "x", "t", "present", "exact");
    os << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%8s %8s %12s %12s\n", format_fixed(r.x, 3).c_str(),
                      format_fixed(r.t, 3).c_str(), format_fixed(r.present, decimals).c_str(),
                      format_fixed(r.exact, decimals).c_str());
        os << line;
    }
    return os.str();
}

inline std::string table_report(const std::map<double, NodalState>& states, const std::vector<double>& sample_xs,
                                const SpaceTimeFunction& exact, const UniformPartition& part, int decimals) {
    return format_table(table_rows(states, sample_xs, exact, part), decimals);
}

/// Reads back the output of format_table.
inline std::vector<TableRow> parse_table(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    std::vector<TableRow> rows;
    TableRow r{};
    while (is >> r.x >> r.t >> r.present >> r.exact) rows.push_back(r);
    return rows;
}

inline constexpr const char* kCsvHeader = "x,t,numerical,exact,abs_error";

inline std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_csv(const std::vector<PointError>& points, bool with_header = true) {
    std::ostringstream os;
    if (with_header) os << kCsvHeader << '\n';
    for (const auto& p : points) {
        os << csv_number(p.x) << ',' << csv_number(p.t) << ',' << csv_number(p.numerical) << ','
           << csv_number(p.exact) << ',' << csv_number(p.abs_error) << '\n';
    }
    return os.str();
}

/// Pointwise errors restricted to the requested knots.
inline std::vector<PointError> sample_errors(const NodalState& s, const SpaceTimeFunction& exact, double t,
                                             const UniformPartition& part, const std::vector<double>& sample_xs) {
    std::vector<PointError> out;
    for (double x : sample_xs) {
        const std::size_t i = knot_index(x, part);
        const double xi = i == static_cast<std::size_t>(part.n_cells()) ? part.b() : part.knot(static_cast<int>(i));
        const double e = exact(xi, t);
        out.push_back({xi, t, s.u[i], e, std::abs(s.u[i] - e)});
    }
    return out;
}

}  // namespace ctb
