#pragma once

// Gradient-pairing series over double cosets, the oriented intersection
// cosine sum, the inverse-square exponential-distance series P_alpha, and
// the finite-difference twist derivative that cross-validates the cosines.

#include <wplab/group.hpp>

#include <complex>
#include <vector>

namespace wplab::pairing {

// u log((u+1)/(u-1)) - 2 for u > 1, stable for large u
double riera_summand(double u);

struct PairingEstimate {
    double value = 0;           // (2/pi)(l_alpha delta + coset_sum)
    double kronecker_part = 0;  // (2/pi) l_alpha when alpha ~ beta, else 0
    double coset_sum = 0;       // raw sum of disjoint-axis summands
    long terms = 0;             // disjoint-axis terms summed
    int max_depth = 0;
    double last_shell = 0;      // contribution of the depth-max_depth shell
    double tail_estimate = 0;   // geometric extrapolation of the last shells (heuristic)
    long crossing_count = 0;    // crossing-axis cosets, excluded from value
    std::vector<double> crossing_cos;  // their oriented cosines (u = |cos|)
};

struct SeriesReport {
    double value = 0;
    long terms = 0;
    double last_shell = 0;
    std::complex<double> basepoint;
    int max_depth = 0;
};

PairingEstimate riera_pairing(const group::MarkedGroup& G, const group::Word& alpha,
                              const group::Word& beta, int depth);

// sum of oriented intersection cosines over crossing double cosets
double cosine_sum(const group::MarkedGroup& G, const group::Word& alpha,
                  const group::Word& beta, int depth);

// central difference of l_beta under the Fenchel-Nielsen twist; h in [1e-6, 1e-2]
double twist_derivative_fd(const group::PuncturedTorus& spec, const group::Word& beta,
                           double h);

// P_alpha(p) = sum over <alpha>\Gamma of e^{-2 d(C(p), axis)}
SeriesReport p_series(const group::MarkedGroup& G, const group::Word& alpha,
                      std::complex<double> p, int depth);

struct GradBound {
    double pairing;
    double bound_ratio;  // pairing / (l + l^2 e^{l/2})
};

GradBound grad_norm_vs_bound(const group::MarkedGroup& G, const group::Word& alpha, int depth);

}  // namespace wplab::pairing
