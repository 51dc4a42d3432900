#include <wplab/model.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace wplab::model {

double metric_eval(const ModelPoint& p, double vr, double vtheta, double wr, double wtheta) {
    if (!(p.r > 0)) throw DomainError("model point needs r > 0");
    return 4 * vr * wr + std::pow(p.r, 6) * vtheta * wtheta;
}

ConnectionCoeffs connection_coeffs(const ModelPoint& p) {
    if (!(p.r > 0)) throw DomainError("model point needs r > 0");
    return {3 / p.r, -0.75 * std::pow(p.r, 5)};
}

double sectional_curvature(const ModelPoint& p) {
    if (!(p.r > 0)) throw DomainError("model point needs r > 0");
    return -1.5 / (p.r * p.r);
}

double sectional_curvature_from_connection(const ModelPoint& p) {
    // R(dr, dth) dth = (g1' - g1 g2) dr with g1 = Gamma^r_thth, g2 = Gamma^th_rth;
    // K = <R(dr,dth)dth, dr> / |dr ^ dth|^2 = (g1' - g1 g2) / r^6.
    // g1' by central difference keeps the route independent of the closed form.
    const double r = p.r, h = 1e-5 * r;
    const double g1p = (connection_coeffs({r + h, 0}).gamma_r_thetatheta -
                        connection_coeffs({r - h, 0}).gamma_r_thetatheta) /
                       (2 * h);
    const auto c = connection_coeffs(p);
    return (g1p - c.gamma_r_thetatheta * c.gamma_theta_rtheta) / std::pow(r, 6);
}

namespace {

struct Deriv {
    double dr, dtheta, drdot, dthetadot;
};

Deriv rhs(double r, double rdot, double thetadot) {
    const double r5 = std::pow(r, 5);
    return {rdot, thetadot, 0.75 * r5 * thetadot * thetadot, -6 / r * rdot * thetadot};
}

}  // namespace

Trajectory geodesic_flow(const ModelState& s0, double T, double h, int sample_stride) {
    if (!(s0.point.r > 0)) throw DomainError("initial r must be positive");
    if (!(h > 0) || !(T > 0)) throw DomainError("T and h must be positive");
    Trajectory traj;
    double r = s0.point.r, th = s0.point.theta, rd = s0.rdot, td = s0.thetadot;
    const long nsteps = static_cast<long>(std::ceil(T / h - 1e-12));
    auto record = [&](double t) {
        traj.samples.push_back({t, r, th, rd, td, 4 * rd * rd + std::pow(r, 6) * td * td,
                                std::pow(r, 6) * td});
    };
    record(0);
    for (long i = 0; i < nsteps; ++i) {
        const double step = std::min(h, T - i * h);
        const Deriv k1 = rhs(r, rd, td);
        const Deriv k2 = rhs(r + step / 2 * k1.dr, rd + step / 2 * k1.drdot,
                             td + step / 2 * k1.dthetadot);
        const Deriv k3 = rhs(r + step / 2 * k2.dr, rd + step / 2 * k2.drdot,
                             td + step / 2 * k2.dthetadot);
        const Deriv k4 = rhs(r + step * k3.dr, rd + step * k3.drdot, td + step * k3.dthetadot);
        r += step / 6 * (k1.dr + 2 * k2.dr + 2 * k3.dr + k4.dr);
        th += step / 6 * (k1.dtheta + 2 * k2.dtheta + 2 * k3.dtheta + k4.dtheta);
        rd += step / 6 * (k1.drdot + 2 * k2.drdot + 2 * k3.drdot + k4.drdot);
        td += step / 6 * (k1.dthetadot + 2 * k2.dthetadot + 2 * k3.dthetadot + k4.dthetadot);
        if (!(r > kRMin) || !std::isfinite(r)) {
            traj.hit_stratum = true;
            record((i + 1) * step);
            return traj;
        }
        if ((i + 1) % sample_stride == 0 || i + 1 == nsteps) record(std::min((i + 1) * h, T));
    }
    return traj;
}

// ---------- distance by Clairaut shooting ----------

namespace {

constexpr std::array<double, 8> kGlx = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975362};
constexpr std::array<double, 8> kGlw = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// one monotone leg between radii r_lo >= m and r_hi, turning radius m:
// angle = int 2 m^3 dr / (r^6 sqrt(1 - (m/r)^6)), length = int 2 dr / sqrt(...),
// regularized by r = m + s^2
struct LegResult {
    double angle, length;
};

LegResult leg_integrals(double m, double r_lo, double r_hi) {
    const double s_lo = std::sqrt(std::max(0.0, r_lo - m));
    const double s_hi = std::sqrt(std::max(0.0, r_hi - m));
    if (s_hi <= s_lo) return {0, 0};
    const int panels = 64;
    double ang = 0, len = 0;
    const double m3 = m * m * m;
    for (int ip = 0; ip < panels; ++ip) {
        const double a = s_lo + (s_hi - s_lo) * ip / panels;
        const double b = s_lo + (s_hi - s_lo) * (ip + 1) / panels;
        const double hc = (b - a) / 2, mid = (a + b) / 2;
        for (int ig = 0; ig < 8; ++ig) {
            const double s = mid + hc * kGlx[ig];
            const double w = hc * kGlw[ig];
            const double r = m + s * s;
            // P = (r^6 - m^6)/(r - m) as an explicit geometric sum
            const double P = ((((r + m) * r + m * m) * r + m3) * r + m3 * m) * r + m3 * m * m;
            const double rootP = std::sqrt(P);
            const double r3 = r * r * r;
            len += w * 4 * r3 / rootP;
            ang += w * 4 * m3 / (r3 * rootP);
        }
    }
    return {ang, len};
}

struct PathEval {
    double angle, length;
};

// dip == true: r1 -> m -> r2; else monotone min(r1,r2) -> max(r1,r2) past m
PathEval path_eval(double m, double r1, double r2, bool dip) {
    if (dip) {
        const LegResult l1 = leg_integrals(m, m, r1);
        const LegResult l2 = leg_integrals(m, m, r2);
        return {l1.angle + l2.angle, l1.length + l2.length};
    }
    const LegResult l = leg_integrals(m, std::min(r1, r2), std::max(r1, r2));
    return {l.angle, l.length};
}

// solve angle(m) = phi on the given branch; returns length or NaN
double solve_branch(double phi, double r1, double r2, bool dip, std::string* bracket_msg) {
    const double a = std::min(r1, r2);
    double lo = a * 1e-6, hi = dip ? a * (1 - 1e-14) : a;
    double f_lo = path_eval(lo, r1, r2, dip).angle - phi;
    double f_hi = path_eval(hi, r1, r2, dip).angle - phi;
    // dip angles blow up as m -> 0; direct angles vanish
    int expand = 0;
    while (f_lo * f_hi > 0 && dip && expand < 60) {
        lo /= 4;
        f_lo = path_eval(lo, r1, r2, dip).angle - phi;
        ++expand;
    }
    if (f_lo * f_hi > 0) {
        if (bracket_msg) {
            std::ostringstream os;
            os << "no bracket on " << (dip ? "dip" : "direct") << " branch: f(" << lo
               << ")=" << f_lo + phi << ", f(" << hi << ")=" << f_hi + phi
               << ", target " << phi;
            *bracket_msg = os.str();
        }
        return std::nan("");
    }
    for (int it = 0; it < 120 && (hi - lo) > 1e-16 * hi; ++it) {
        const double mid = (lo + hi) / 2;
        const double f = path_eval(mid, r1, r2, dip).angle - phi;
        if ((f > 0) == (f_hi > 0)) {
            hi = mid;
            f_hi = f;
        } else {
            lo = mid;
            f_lo = f;
        }
    }
    const double m = (lo + hi) / 2;
    return path_eval(m, r1, r2, dip).length;
}

}  // namespace

double distance_to_stratum(const ModelPoint& p) {
    if (!(p.r > 0)) throw DomainError("model point needs r > 0");
    return 2 * p.r;
}

double distance(const ModelPoint& p, const ModelPoint& q) {
    if (!(p.r > 0) || !(q.r > 0)) throw DomainError("model points need r > 0");
    const double dth = q.theta - p.theta;
    double best = 2 * (p.r + q.r);  // through the vertex
    std::string last_bracket;
    const long k0 = std::lround(-dth / (2 * M_PI));
    bool solved_any = false;
    for (long k = k0 - 1; k <= k0 + 1; ++k) {
        const double phi = std::fabs(dth + 2 * M_PI * k);
        if (phi == 0) {
            best = std::min(best, 2 * std::fabs(p.r - q.r));
            solved_any = true;
            continue;
        }
        const double a = std::min(p.r, q.r);
        const double split = path_eval(a, p.r, q.r, false).angle;  // max direct angle
        double len;
        if (phi <= split)
            len = solve_branch(phi, p.r, q.r, false, &last_bracket);
        else
            len = solve_branch(phi, p.r, q.r, true, &last_bracket);
        if (std::isnan(len)) continue;
        solved_any = true;
        best = std::min(best, len);
    }
    if (!solved_any && !last_bracket.empty())
        throw NoConvergence("distance shooting failed; " + last_bracket);
    return best;
}

double comparison_angle(double d_pq, double d_pr, double d_qr) {
    if (d_pq < 1e-14 || d_pr < 1e-14) throw DegenerateTriple();
    const double scale = std::max({d_pq, d_pr, d_qr});
    if (d_pq + d_pr < d_qr - 1e-12 * scale || d_pq + d_qr < d_pr - 1e-12 * scale ||
        d_pr + d_qr < d_pq - 1e-12 * scale)
        throw DomainError("triangle inequality violated beyond tolerance");
    // needle-stable half-angle form of the Law of Cosines
    const double a = d_qr, b = d_pq, c = d_pr;
    const double u = std::max(0.0, a - std::fabs(b - c)) * (a + std::fabs(b - c));
    const double v = std::max(0.0, (b + c) - a) * ((b + c) + a);
    return 2 * std::atan2(std::sqrt(u), std::sqrt(v));
}

std::vector<double> stratum_comparison_angles(double theta0, double theta1,
                                              const std::vector<double>& ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const ModelPoint p0{t / 2, theta0}, p1{t / 2, theta1};
        out.push_back(comparison_angle(t, t, distance(p0, p1)));
    }
    return out;
}

double alexandrov_angle(const ModelState& g0, const ModelState& g1,
                        const std::vector<double>& ts) {
    if (std::fabs(g0.point.r - g1.point.r) > 1e-12 ||
        std::fabs(g0.point.theta - g1.point.theta) > 1e-12)
        throw DomainError("geodesics must share the initial point");
    const double v0 = std::sqrt(g0.energy()), v1 = std::sqrt(g1.energy());
    if (!(v0 > 0) || !(v1 > 0)) throw DegenerateTriple("stationary geodesic");
    std::vector<double> sorted = ts;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    const double tmax = sorted.front();
    const double h = tmax / 262144;
    const Trajectory tr0 = geodesic_flow(g0, tmax, h, 1);
    const Trajectory tr1 = geodesic_flow(g1, tmax, h, 1);
    auto at = [&](const Trajectory& tr, double t) -> ModelPoint {
        const size_t i = std::min(tr.samples.size() - 1,
                                  static_cast<size_t>(std::lround(t / h)));
        return {tr.samples[i].r, tr.samples[i].theta};
    };
    std::vector<double> angles;
    for (double t : sorted) {
        const double d01 = distance(at(tr0, t), at(tr1, t));
        angles.push_back(comparison_angle(v0 * t, v1 * t, d01));
    }
    if (angles.size() == 1) return angles[0];
    // comparison angles are non-increasing toward t = 0; extrapolate linearly
    const size_t n = angles.size();
    const double t1 = sorted[n - 1], t2 = sorted[n - 2];
    const double a1 = angles[n - 1], a2 = angles[n - 2];
    const double ext = a1 - t1 * (a2 - a1) / (t2 - t1);
    return std::clamp(ext, 0.0, M_PI);
}

LambdaDictionary lambda_dictionary(double r) {
    if (!(r > 0)) throw DomainError("r must be positive");
    LambdaDictionary d;
    d.l = 2 * M_PI * M_PI * r * r;
    d.d_stratum_wp = 2 * std::pow(M_PI, 1.5) * r;
    // along the pi^3-scaled unit-speed radial geodesic dr/dt = (2 pi^{3/2})^{-1}
    const double dsqrtl_dt = std::sqrt(2.0) * M_PI / (2 * std::pow(M_PI, 1.5));
    d.unit_speed_check = std::sqrt(2 * M_PI) * dsqrtl_dt;
    return d;
}

ConeVector cone_vector(const ModelState& s0) {
    const double L = s0.angular_momentum();
    if (std::fabs(L) > 1e-12 * std::max(1.0, s0.energy()))
        throw DomainError("only radial geodesics reach the vertex");
    return {{2 * std::pow(M_PI, 1.5) * std::fabs(s0.rdot)}, {}};
}

double kahler_identity_check(double r) {
    if (!(r > 0)) throw DomainError("r must be positive");
    const double lhs = 2 * r * r * r;
    const double l = 2 * M_PI * M_PI * r * r;
    const double dl_dr = 4 * M_PI * M_PI * r;
    const double rhs = l * dl_dr / (4 * std::pow(M_PI, 4));
    return lhs - rhs;
}

}  // namespace wplab::model
