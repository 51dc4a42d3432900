#pragma once

// Sweep grids and the log-log order fit used by the CLI.

#include <wplab/errors.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace wplab::cli {

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    size_t window_begin = 0;  // index range used (half-open)
    size_t window_end = 0;
};

// least squares on (log x, log y); all inputs must be positive
FitResult fit_order(const std::vector<double>& xs, const std::vector<double>& ys);
FitResult fit_order(const std::vector<double>& xs, const std::vector<double>& ys,
                    size_t window_begin, size_t window_end);

struct SweepGrid {
    double from, to;
    int count;
    bool log_spacing = false;

    std::vector<double> points() const;
};

// parse "from:to:count"
SweepGrid parse_grid(const std::string& text, bool log_spacing);

}  // namespace wplab::cli
