#pragma once

// The singular model metric 4dr^2 + r^6 dtheta^2 on R^2 \ {0}: metric,
// connection, curvature, geodesic flow with conserved quantities, distances
// by Clairaut shooting, comparison angles, and the 2 pi^2 r^2 = l dictionary.

#include <wplab/errors.hpp>

#include <cmath>
#include <vector>

namespace wplab::model {

inline constexpr double kRMin = 1e-6;

struct ModelPoint {
    double r;      // > 0
    double theta;  // unreduced; geodesics may wind
};

struct ModelState {
    ModelPoint point;
    double rdot = 0;
    double thetadot = 0;

    double energy() const {
        const double r6 = std::pow(point.r, 6);
        return 4 * rdot * rdot + r6 * thetadot * thetadot;
    }
    double angular_momentum() const { return std::pow(point.r, 6) * thetadot; }
};

struct ConeVector {
    std::vector<double> orthant_part;  // one entry per short curve, >= 0
    std::vector<double> stratum_part;  // empty for the 2-D model
};

struct ConnectionCoeffs {
    double gamma_theta_rtheta;  // 3/r
    double gamma_r_thetatheta;  // -(3/4) r^5
    // all other Christoffel symbols vanish
};

struct TrajectorySample {
    double t, r, theta, rdot, thetadot, E, L;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    bool hit_stratum = false;  // integration stopped at r < r_min
};

double metric_eval(const ModelPoint& p, double vr, double vtheta, double wr, double wtheta);

ConnectionCoeffs connection_coeffs(const ModelPoint& p);

double sectional_curvature(const ModelPoint& p);
// same value assembled from the connection (derivative of Gamma^r_thetatheta
// in closed form), as an independent route
double sectional_curvature_from_connection(const ModelPoint& p);

// classical RK4, fixed step; aborts into hit_stratum when r < r_min
Trajectory geodesic_flow(const ModelState& s0, double T, double h, int sample_stride = 1);

// geodesic distance: minimum over winding families of Clairaut shooting
// solutions and the path through the vertex
double distance(const ModelPoint& p, const ModelPoint& q);
double distance_to_stratum(const ModelPoint& p);  // = 2r

// Euclidean comparison angle at p for the triple (p, q, r): Law of Cosines
double comparison_angle(double d_pq, double d_pr, double d_qr);

// comparison angles of two radial unit-speed geodesics from the vertex,
// evaluated at the given times (d(vertex, gamma(t)) = t)
std::vector<double> stratum_comparison_angles(double theta0, double theta1,
                                              const std::vector<double>& ts);

// Alexandrov angle between two model geodesics from a common interior point:
// monotone comparison angles extrapolated to t -> 0
double alexandrov_angle(const ModelState& g0, const ModelState& g1,
                        const std::vector<double>& ts);

struct LambdaDictionary {
    double l;                 // 2 pi^2 r^2
    double d_stratum_wp;      // pi^{3/2} 2 r, the WP-scaled radial distance
    double unit_speed_check;  // (2 pi)^{1/2} d(l^{1/2})/dt on the scaled radial geodesic
};

LambdaDictionary lambda_dictionary(double r);

// Lambda map of a geodesic from the vertex with the pi^3-scaled metric:
// orthant coordinate (2 pi)^{1/2} d(l^{1/2})/dt (0)
ConeVector cone_vector(const ModelState& s0);

// residual of 2 r^3 - (4 pi^4)^{-1} l dl/dr under l = 2 pi^2 r^2
double kahler_identity_check(double r);

}  // namespace wplab::model
