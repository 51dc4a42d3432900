#include <wplab/fit.hpp>

#include <cmath>
#include <sstream>

namespace wplab::cli {

FitResult fit_order(const std::vector<double>& xs, const std::vector<double>& ys) {
    return fit_order(xs, ys, 0, xs.size());
}

FitResult fit_order(const std::vector<double>& xs, const std::vector<double>& ys,
                    size_t window_begin, size_t window_end) {
    if (xs.size() != ys.size() || window_end > xs.size() || window_begin >= window_end)
        throw DomainError("bad fit window");
    if (window_end - window_begin < 3)
        throw NonPositiveData("log-log fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const size_t n = window_end - window_begin;
    for (size_t i = window_begin; i < window_end; ++i) {
        if (!(xs[i] > 0) || !(ys[i] > 0)) throw NonPositiveData();
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0) throw NonPositiveData("degenerate abscissae");
    FitResult r;
    r.slope = (n * sxy - sx * sy) / den;
    r.intercept = (sy - r.slope * sx) / n;
    const double sst = syy - sy * sy / n;
    double sse = 0;
    for (size_t i = window_begin; i < window_end; ++i) {
        const double e = std::log(ys[i]) - (r.intercept + r.slope * std::log(xs[i]));
        sse += e * e;
    }
    r.r2 = sst > 0 ? std::max(0.0, 1 - sse / sst) : 1.0;
    r.window_begin = window_begin;
    r.window_end = window_end;
    return r;
}

std::vector<double> SweepGrid::points() const {
    std::vector<double> p;
    p.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        if (log_spacing)
            p.push_back(from * std::pow(to / from, t));
        else
            p.push_back(from + (to - from) * t);
    }
    return p;
}

SweepGrid parse_grid(const std::string& text, bool log_spacing) {
    std::istringstream is(text);
    SweepGrid g;
    char c1 = 0, c2 = 0;
    if (!(is >> g.from >> c1 >> g.to >> c2 >> g.count) || c1 != ':' || c2 != ':')
        throw DomainError("grid must be from:to:count");
    if (!(g.from < g.to) || g.count < 2) throw DomainError("grid needs from < to and count >= 2");
    g.log_spacing = log_spacing;
    if (log_spacing && !(g.from > 0)) throw DomainError("log grid needs from > 0");
    return g;
}

}  // namespace wplab::cli
