#include <wplab/hyp.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace wplab::hyp {

Isometry::Isometry(double a_, double b_, double c_, double d_) {
    const double det = a_ * d_ - b_ * c_;
    if (!(det > 0) || !std::isfinite(det))
        throw InvalidMatrix("determinant must be positive and finite");
    const double s = std::sqrt(det);
    a = a_ / s;
    b = b_ / s;
    c = c_ / s;
    d = d_ / s;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
}

double distance_mod_sign(const Isometry& S, const Isometry& T) {
    const double plus = std::max({std::fabs(S.a - T.a), std::fabs(S.b - T.b),
                                  std::fabs(S.c - T.c), std::fabs(S.d - T.d)});
    const double minus = std::max({std::fabs(S.a + T.a), std::fabs(S.b + T.b),
                                   std::fabs(S.c + T.c), std::fabs(S.d + T.d)});
    return std::min(plus, minus);
}

BoundaryPoint mobius_boundary(const Isometry& T, const BoundaryPoint& p) {
    if (p.at_infinity) {
        if (T.c == 0) return BoundaryPoint::infinity();
        return BoundaryPoint::finite(T.a / T.c);
    }
    const double den = T.c * p.v + T.d;
    if (den == 0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite((T.a * p.v + T.b) / den);
}

GeodesicLine::GeodesicLine(BoundaryPoint p, BoundaryPoint q) {
    if (p == q) throw SharedEndpoint("geodesic endpoints coincide");
    // canonical order: finite ascending, infinity last
    if (p.at_infinity || (!q.at_infinity && q.v < p.v)) std::swap(p, q);
    e1 = p;
    e2 = q;
}

IsometryType classify(const Isometry& T) {
    const double t = std::fabs(T.trace());
    if (t > 2 + kParabolicTol) return IsometryType::Hyperbolic;
    if (t >= 2 - kParabolicTol) return IsometryType::Parabolic;
    return IsometryType::Elliptic;
}

double translation_length(const Isometry& T) {
    if (classify(T) != IsometryType::Hyperbolic)
        throw NotHyperbolic();
    return 2 * std::acosh(std::fabs(T.trace()) / 2);
}

FixedPoints fixed_points(const Isometry& T) {
    if (classify(T) != IsometryType::Hyperbolic)
        throw NotHyperbolic();
    // fixed points solve c z^2 + (d-a) z - b = 0
    if (T.c == 0) {
        // affine: z -> (a/d) z + b/d, fixes infinity and b/(d-a)
        const BoundaryPoint inf = BoundaryPoint::infinity();
        const BoundaryPoint fin = BoundaryPoint::finite(T.b / (T.d - T.a));
        if (std::fabs(T.a) > std::fabs(T.d)) return {inf, fin};
        return {fin, inf};
    }
    const double B = T.d - T.a, C = -T.b;
    const double disc = B * B - 4 * T.c * C;
    // hyperbolic guarantees disc = tr^2 - 4 > 0 (in particular q below is nonzero)
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double q = -(B + std::copysign(sq, B)) / 2;
    double z1 = q / T.c;
    double z2 = C / q;
    // attracting fixed point p has |c p + d| > 1
    const auto deriv = [&](double z) { return std::fabs(T.c * z + T.d); };
    if (deriv(z1) < deriv(z2)) std::swap(z1, z2);
    return {BoundaryPoint::finite(z1), BoundaryPoint::finite(z2)};
}

GeodesicLine axis(const Isometry& T) {
    const FixedPoints fp = fixed_points(T);
    return GeodesicLine(fp.repelling, fp.attracting);
}

Isometry normalize_axis_to_imaginary(const Isometry& T) {
    const FixedPoints fp = fixed_points(T);
    const BoundaryPoint p = fp.repelling, q = fp.attracting;
    if (p.at_infinity) return Isometry(0, -1, 1, -q.v);  // inf -> 0, q -> inf
    if (q.at_infinity) return Isometry(1, -p.v, 0, 1);   // p -> 0, inf -> inf
    if (q.v > p.v) return Isometry(-1, p.v, 1, -q.v);    // det = q - p > 0
    return Isometry(1, -p.v, 1, -q.v);                   // det = p - q > 0
}

double dist_point_to_geodesic(std::complex<double> p, const GeodesicLine& G) {
    if (!(p.imag() > 0)) throw DomainError("point must be interior to H");
    std::complex<double> z = p;
    if (!(G == GeodesicLine::imaginary_axis())) {
        if (G.e2.at_infinity) {
            z = p - G.e1.v;
        } else {
            // (z - g2)/(z - g1) sends (g2, g1) to (0, inf) and preserves H
            const double g1 = G.e1.v, g2 = G.e2.v;  // g1 < g2 canonical
            z = (p - g2) / (p - g1);
        }
    }
    const double theta = std::arg(z);  // in (0, pi)
    const double s = std::sin(theta);
    return std::log((1 + std::fabs(std::cos(theta))) / s);
}

UInvariant u_invariant(const GeodesicLine& G1, const GeodesicLine& G2) {
    if (G1.e1 == G2.e1 || G1.e1 == G2.e2 || G1.e2 == G2.e1 || G1.e2 == G2.e2)
        throw SharedEndpoint();
    // map G1 to (0, inf), track images of G2's endpoints
    Isometry M(1, 0, 0, 1);
    if (G1.e2.at_infinity) {
        M = Isometry(1, -G1.e1.v, 0, 1);
    } else {
        const double g1 = G1.e1.v, g2 = G1.e2.v;  // g1 < g2
        M = Isometry(1, -g2, 1, -g1);             // det = g2 - g1 > 0, g2->0, g1->inf
    }
    const BoundaryPoint A = mobius_boundary(M, G2.e1);
    const BoundaryPoint B = mobius_boundary(M, G2.e2);
    if (A.at_infinity || B.at_infinity)
        throw SharedEndpoint("image endpoint at infinity");
    const double num = std::fabs(A.v + B.v);
    const double den = std::fabs(A.v - B.v);
    const double u = num / den;
    return {u, u < 1.0};
}

CollarData collar_width(double length) {
    if (!(length > 0)) throw NonPositiveLength();
    return {length, std::asinh(1.0 / std::sinh(length / 2))};
}

namespace {
double eigenfunction_u(double x, double y) {
    const double t = std::atan2(y, x);
    // t cot t, with the removable value at t = pi/2
    return 1.0 - t * (std::cos(t) / std::sin(t));
}
}  // namespace

double eigenfunction_residual(double theta, double h) {
    if (!(h > 0)) throw DomainError("step must be positive");
    if (theta < 10 * h || theta > M_PI - 10 * h)
        throw StepTooLarge();
    const double x = std::cos(theta), y = std::sin(theta);
    const double u0 = eigenfunction_u(x, y);
    const double lap =
        (eigenfunction_u(x + h, y) - 2 * u0 + eigenfunction_u(x - h, y)) / (h * h) +
        (eigenfunction_u(x, y + h) - 2 * u0 + eigenfunction_u(x, y - h)) / (h * h);
    return y * y * lap - 2 * u0;
}

double hyperbolic_distance(std::complex<double> z, std::complex<double> w) {
    const double n = std::norm(z - w);
    return std::acosh(1 + n / (2 * z.imag() * w.imag()));
}

std::ostream& operator<<(std::ostream& os, const Isometry& T) {
    return os << "[[" << T.a << ", " << T.b << "], [" << T.c << ", " << T.d << "]]";
}

}  // namespace wplab::hyp
