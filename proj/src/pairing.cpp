#include <wplab/pairing.hpp>

#include <cmath>

namespace wplab::pairing {

using group::MarkedGroup;
using group::Word;

double riera_summand(double u) {
    if (!(u > 1 + 1e-12)) throw DomainError("riera summand needs u > 1 + 1e-12");
    if (u > 10) {
        // u log((u+1)/(u-1)) - 2 = 2 sum_{k>=1} u^{-2k}/(2k+1), avoids the
        // cancellation against 2
        const double w = 1 / (u * u);
        double term = w, sum = 0;
        for (int k = 1; k < 40; ++k) {
            const double add = term / (2 * k + 1);
            sum += add;
            if (add < 1e-18 * sum) break;
            term *= w;
        }
        return 2 * sum;
    }
    return u * std::log1p(2 / (u - 1)) - 2;
}

namespace {

// Neumaier compensated accumulator
struct Kahan {
    double s = 0, c = 0;
    void add(double x) {
        const double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

double tail_from_shells(const std::vector<double>& shells) {
    // geometric fit of the last three nonzero shell magnitudes
    std::vector<double> last;
    for (auto it = shells.rbegin(); it != shells.rend() && last.size() < 3; ++it)
        if (*it > 0) last.push_back(*it);
    if (last.size() < 2) return 0;
    const double r = last.size() == 3 ? std::sqrt(last[0] / last[2]) : last[0] / last[1];
    if (!(r > 0) || !(r < 1)) return 0;
    return last[0] * r / (1 - r);
}

}  // namespace

PairingEstimate riera_pairing(const MarkedGroup& G, const Word& alpha, const Word& beta,
                              int depth) {
    PairingEstimate est;
    est.max_depth = depth;
    const double l_alpha = hyp::translation_length(G.word_matrix(alpha));
    const bool diag = group::same_curve(alpha, beta);
    est.kronecker_part = diag ? 2 / M_PI * l_alpha : 0.0;

    std::vector<Kahan> shells(depth + 1);
    group::for_each_double_coset(G, alpha, beta, depth, [&](const group::DoubleCosetTerm& t) {
        if (t.crossing) {
            est.crossing_count++;
            est.crossing_cos.push_back(t.cos_oriented);
            return;
        }
        shells[t.depth].add(riera_summand(t.u));
        est.terms++;
    });
    Kahan total;
    std::vector<double> shell_values;
    for (const auto& sh : shells) {
        shell_values.push_back(sh.value());
        total.add(sh.value());
    }
    est.coset_sum = total.value();
    est.last_shell = shell_values.empty() ? 0 : shell_values.back();
    est.tail_estimate = tail_from_shells(shell_values);
    est.value = est.kronecker_part + 2 / M_PI * est.coset_sum;
    return est;
}

double cosine_sum(const MarkedGroup& G, const Word& alpha, const Word& beta, int depth) {
    Kahan sum;
    group::for_each_double_coset(G, alpha, beta, depth, [&](const group::DoubleCosetTerm& t) {
        if (t.crossing) sum.add(t.cos_oriented);
    });
    return sum.value();
}

double twist_derivative_fd(const group::PuncturedTorus& spec, const Word& beta, double h) {
    if (!(h >= 1e-6 && h <= 1e-2)) throw StepOutOfRange();
    const auto len = [&](double tau) {
        const MarkedGroup G = group::build_punctured_torus({spec.l, tau});
        return hyp::translation_length(G.word_matrix(beta));
    };
    return (len(spec.tau + h) - len(spec.tau - h)) / (2 * h);
}

SeriesReport p_series(const MarkedGroup& G, const Word& alpha, std::complex<double> p,
                      int depth) {
    SeriesReport rep;
    rep.basepoint = p;
    rep.max_depth = depth;
    std::vector<Kahan> shells(depth + 1);
    long n_terms = 0;
    group::for_each_orbit_point(G, alpha, p, depth, [&](std::complex<double> z, int d) {
        const double theta = std::arg(z);
        const double s = std::sin(theta);
        // e^{-2 d(z, (0,inf))} = (sin theta / (1 + |cos theta|))^2
        const double e = s / (1 + std::fabs(std::cos(theta)));
        shells[d].add(e * e);
        n_terms++;
    });
    Kahan total;
    std::vector<double> shell_values;
    for (const auto& sh : shells) {
        shell_values.push_back(sh.value());
        total.add(sh.value());
    }
    rep.value = total.value();
    rep.terms = n_terms;
    rep.last_shell = shell_values.empty() ? 0 : shell_values.back();
    return rep;
}

GradBound grad_norm_vs_bound(const MarkedGroup& G, const Word& alpha, int depth) {
    const double l = hyp::translation_length(G.word_matrix(alpha));
    const PairingEstimate est = riera_pairing(G, alpha, alpha, depth);
    return {est.value, est.value / (l + l * l * std::exp(l / 2))};
}

}  // namespace wplab::pairing
