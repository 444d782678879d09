#pragma once

// Published benchmark values for the CTB collocation scheme ("Present"
// columns) and the printed exact values beside them.

#include <array>
#include <span>

namespace ctb::reference {

struct Cell {
    double x;
    double t;
    double present;
    double exact;  // as printed
};

inline constexpr std::array<double, 3> kSineXs = {0.25, 0.5, 0.75};
inline constexpr std::array<double, 5> kSineTimes = {0.4, 0.6, 0.8, 1.0, 3.0};

// lambda = 1, N = 40, dt = 1e-4
inline constexpr std::array<Cell, 15> kTable2 = {{
    {0.25, 0.4, 0.01355, 0.01357}, {0.25, 0.6, 0.00188, 0.00189}, {0.25, 0.8, 0.00026, 0.00026},
    {0.25, 1.0, 0.00004, 0.00004}, {0.25, 3.0, 0.00000, 0.00000},
    {0.50, 0.4, 0.01920, 0.01924}, {0.50, 0.6, 0.00266, 0.00267}, {0.50, 0.8, 0.00037, 0.00037},
    {0.50, 1.0, 0.00005, 0.00005}, {0.50, 3.0, 0.00000, 0.00000},
    {0.75, 0.4, 0.01361, 0.01363}, {0.75, 0.6, 0.00188, 0.00189}, {0.75, 0.8, 0.00026, 0.00026},
    {0.75, 1.0, 0.00004, 0.00004}, {0.75, 3.0, 0.00000, 0.00000},
}};

// lambda = 0.1, N = 40, dt = 1e-4
inline constexpr std::array<Cell, 15> kTable3 = {{
    {0.25, 0.4, 0.30892, 0.30889}, {0.25, 0.6, 0.24078, 0.24074}, {0.25, 0.8, 0.19572, 0.19568},
    {0.25, 1.0, 0.16261, 0.16256}, {0.25, 3.0, 0.02718, 0.02720},
    {0.50, 0.4, 0.56971, 0.56963}, {0.50, 0.6, 0.44730, 0.44721}, {0.50, 0.8, 0.35932, 0.35924},
    {0.50, 1.0, 0.29197, 0.29192}, {0.50, 3.0, 0.04017, 0.04021},
    {0.75, 0.4, 0.62524, 0.62544}, {0.75, 0.6, 0.48698, 0.48721}, {0.75, 0.8, 0.37369, 0.37392},
    {0.75, 1.0, 0.28727, 0.28747}, {0.75, 3.0, 0.02974, 0.02977},
}};

// lambda = 0.01, N = 40, dt = 1e-4. The printed exact value at
// (0.25, 0.6) reads 0.22896 beside a present value of 0.26896.
inline constexpr std::array<Cell, 15> kTable4 = {{
    {0.25, 0.4, 0.34191, 0.34191}, {0.25, 0.6, 0.26896, 0.22896}, {0.25, 0.8, 0.22148, 0.22148},
    {0.25, 1.0, 0.18819, 0.18819}, {0.25, 3.0, 0.07511, 0.07511},
    {0.50, 0.4, 0.66071, 0.66071}, {0.50, 0.6, 0.52942, 0.52942}, {0.50, 0.8, 0.43914, 0.43914},
    {0.50, 1.0, 0.37442, 0.37442}, {0.50, 3.0, 0.15017, 0.15018},
    {0.75, 0.4, 0.91029, 0.91026}, {0.75, 0.6, 0.76725, 0.76724}, {0.75, 0.8, 0.64740, 0.64740},
    {0.75, 1.0, 0.55605, 0.55605}, {0.75, 3.0, 0.22489, 0.22481},
}};

struct ExcludedExact {
    double x;
    double t;
};
inline constexpr std::array<ExcludedExact, 1> kTable4ExcludedExact = {{{0.25, 0.6}}};

// Travelling wave, alpha = 0.4, mu = 0.6, gamma = 0.125, lambda = 0.01,
// h = 1/36, t = 0.5, x = i/18.
inline constexpr double kTable5Time = 0.5;
inline constexpr std::array<double, 19> kTable5Present = {
    1.0, 1.0, 1.0, 1.0, 1.0, 0.999, 0.983, 0.845, 0.456, 0.237, 0.203, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2,
};
inline constexpr std::array<double, 19> kTable5Exact = {
    1.0, 1.0, 1.0, 1.0, 1.0, 0.998, 0.980, 0.847, 0.452, 0.238, 0.204, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2,
};
// The table header and the running text give different time steps.
inline constexpr std::array<double, 2> kTable5Steps = {0.001, 0.01};

}  // namespace ctb::reference
