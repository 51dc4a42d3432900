#pragma once

// Horizontal-strip Fourier machinery for the first and second variations of
// geodesic-length: antiderivative-operator coefficients, the Hermitian forms
// Q and QS with closed-form diagonals, and an independent quadrature oracle.

#include <wplab/errors.hpp>

#include <complex>
#include <map>

namespace wplab::strip {

inline constexpr int kSupportCap = 64;

// finite Fourier data (l, {a_n}) of phi = sum a_n z^{eps n} (dz/z)^2 on the
// annulus H/<z -> e^l z>; eps = 2 pi i / l is always recomputed from l
struct FourierQD {
    double l;
    std::map<int, std::complex<double>> coeffs;

    FourierQD(double length, std::map<int, std::complex<double>> cs);
    std::complex<double> a0() const {
        auto it = coeffs.find(0);
        return it == coeffs.end() ? std::complex<double>(0) : it->second;
    }
    double freq(int n) const { return 2 * M_PI * n / l; }  // |eps| n, signed
};

struct VariationReport {
    double first = 0;           // l'[mu]
    double first_rot = 0;       // l'[i mu]
    double second = 0;          // l''[mu,mu]
    double complex_hessian = 0; // del delbar l [mu,mu]
    double Q = 0;
    double QS = 0;
};

struct EichlerCoeff {
    std::complex<double> A;         // 1/(eps n - 1)
    std::complex<double> C;         // 1/(eps n + 1)
    double combined;                // A - C = -2/(1 + (2 pi n / l)^2), real
};

EichlerCoeff eichler_coeff(int n, double l);
double eichler_combined_coeff(int n, double l);

// int_0^pi e^{-2ay} sin^2 y dy = (1 - e^{-2 pi a}) / (4a (a^2+1)); a -> 0 limit pi/2
double strip_integral_sin2(double a);
// int_0^pi e^{-2ay} sin^4 y dy = (3/4)(1 - e^{-2 pi a}) / (a (a^2+1)(a^2+4)); limit 3 pi/8
double strip_integral_sin4(double a);

// diagonal Hermitian forms on the coefficients
double q_form(const FourierQD& phi);   // Q(zA, zA)
double qs_form(const FourierQD& phi);  // QS(phi, phi)

// (l'[mu], l'[i mu]) = (-4 l Re a0, -4 l Im a0)
std::pair<double, double> first_variation(const FourierQD& phi);

VariationReport second_variation(const FourierQD& phi);

// same report evaluated by tensor-product quadrature over [0,l] x [0,pi]
// (trapezoid in x on a periodic grid, composite Gauss-Legendre in y),
// independent of the closed forms; grid is the y-resolution, >= 64
VariationReport quadrature_oracle(const FourierQD& phi, int grid);

}  // namespace wplab::strip
