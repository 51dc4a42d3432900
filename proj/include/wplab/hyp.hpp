#pragma once

// Primitives of the upper half-plane: PSL(2,R) isometries, complete
// geodesics, point-to-geodesic distance, the two-geodesic invariant u,
// collar data and the mean-value eigenfunction check.

#include <wplab/errors.hpp>

#include <complex>
#include <iosfwd>
#include <optional>

namespace wplab::hyp {

constexpr double kParabolicTol = 1e-10;

enum class IsometryType { Elliptic, Parabolic, Hyperbolic };

// Real 2x2 unit-determinant matrix modulo sign.  Construction rescales to
// unit determinant and canonicalizes the sign: a > 0, or a == 0 and b > 0.
struct Isometry {
    double a = 1, b = 0, c = 0, d = 1;

    Isometry() = default;
    Isometry(double a_, double b_, double c_, double d_);

    // Products of unit-determinant matrices are kept raw: entries stay
    // relatively accurate, while recomputing the determinant of a large-entry
    // product is a catastrophic cancellation and must not be used to rescale.
    static Isometry raw(double a_, double b_, double c_, double d_) {
        Isometry T;
        T.a = a_;
        T.b = b_;
        T.c = c_;
        T.d = d_;
        return T;
    }

    double trace() const { return a + d; }
    Isometry inverse() const { return raw(d, -b, -c, a); }

    // Mobius action on the boundary R u {inf}; inf encoded below.
    friend Isometry operator*(const Isometry& L, const Isometry& R) {
        return raw(L.a * R.a + L.b * R.c, L.a * R.b + L.b * R.d,
                   L.c * R.a + L.d * R.c, L.c * R.b + L.d * R.d);
    }
    std::complex<double> apply(std::complex<double> z) const {
        return (a * z + b) / (c * z + d);
    }
};

// max-norm distance between matrices identified with their negation
double distance_mod_sign(const Isometry& S, const Isometry& T);

// Boundary point of H: a real number or the point at infinity.
struct BoundaryPoint {
    double v = 0;
    bool at_infinity = false;

    static BoundaryPoint infinity() { return {0.0, true}; }
    static BoundaryPoint finite(double x) { return {x, false}; }
    bool operator==(const BoundaryPoint& o) const {
        return at_infinity == o.at_infinity && (at_infinity || v == o.v);
    }
};

BoundaryPoint mobius_boundary(const Isometry& T, const BoundaryPoint& p);

// Complete geodesic given by its distinct boundary endpoints, canonically
// oriented: finite endpoints ascending, infinity last.
struct GeodesicLine {
    BoundaryPoint e1, e2;

    GeodesicLine(BoundaryPoint p, BoundaryPoint q);
    static GeodesicLine imaginary_axis() {
        return GeodesicLine(BoundaryPoint::finite(0), BoundaryPoint::infinity());
    }
    bool operator==(const GeodesicLine& o) const { return e1 == o.e1 && e2 == o.e2; }
};

struct CollarData {
    double length;  // l > 0
    double width;   // sinh(width) * sinh(length/2) = 1
};

struct FixedPoints {
    BoundaryPoint attracting;
    BoundaryPoint repelling;
};

struct UInvariant {
    double u;       // |a+b| / |a-b| after sending the first geodesic to (0,inf)
    bool crossing;  // u < 1: u = cos of the intersection angle; else u = cosh(distance)
};

IsometryType classify(const Isometry& T);

// l = 2 arccosh(|tr|/2), invariant under conjugation and inversion
double translation_length(const Isometry& T);

FixedPoints fixed_points(const Isometry& T);
GeodesicLine axis(const Isometry& T);

// unit-determinant map sending (repelling, attracting) of T to (0, inf);
// conjugating T by it yields diag(e^{l/2}, e^{-l/2})
Isometry normalize_axis_to_imaginary(const Isometry& T);

double dist_point_to_geodesic(std::complex<double> p, const GeodesicLine& G);

UInvariant u_invariant(const GeodesicLine& G1, const GeodesicLine& G2);

CollarData collar_width(double length);

// residual of y^2 (Laplacian u) - 2u at e^{i theta} for u = 1 - arg z cot(arg z),
// central differences with step h; O(h^2)
double eigenfunction_residual(double theta, double h);

// hyperbolic distance between interior points (used by tests and the u cross-checks)
double hyperbolic_distance(std::complex<double> z, std::complex<double> w);

std::ostream& operator<<(std::ostream& os, const Isometry& T);

}  // namespace wplab::hyp
