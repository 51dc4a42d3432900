#include <wplab/strip.hpp>

#include <array>
#include <cmath>
#include <vector>

namespace wplab::strip {

using cplx = std::complex<double>;

FourierQD::FourierQD(double length, std::map<int, cplx> cs) : l(length), coeffs(std::move(cs)) {
    if (!(l > 0)) throw NonPositiveLength("FourierQD needs l > 0");
    for (const auto& [n, a] : coeffs) {
        (void)a;
        if (n > kSupportCap || n < -kSupportCap)
            throw DomainError("Fourier support exceeds |n| <= 64");
    }
}

EichlerCoeff eichler_coeff(int n, double l) {
    if (!(l > 0)) throw NonPositiveLength();
    const double a = 2 * M_PI * n / l;
    const cplx eps_n(0, a);
    return {1.0 / (eps_n - 1.0), 1.0 / (eps_n + 1.0), -2.0 / (1.0 + a * a)};
}

double eichler_combined_coeff(int n, double l) { return eichler_coeff(n, l).combined; }

double strip_integral_sin2(double a) {
    if (std::fabs(a) < 1e-8) return M_PI / 2;
    return -std::expm1(-2 * M_PI * a) / (4 * a * (a * a + 1));
}

double strip_integral_sin4(double a) {
    if (std::fabs(a) < 1e-8) return 3 * M_PI / 8;
    return -0.75 * std::expm1(-2 * M_PI * a) / (a * (a * a + 1) * (a * a + 4));
}

double q_form(const FourierQD& phi) {
    double sum = 0;
    for (const auto& [n, an] : phi.coeffs) {
        const double a = phi.freq(n);
        sum += std::norm(an) / (a * a + 1) * strip_integral_sin2(a);
    }
    return phi.l * sum;
}

double qs_form(const FourierQD& phi) {
    double sum = 0;
    for (const auto& [n, an] : phi.coeffs)
        sum += std::norm(an) * strip_integral_sin4(phi.freq(n));
    return phi.l * sum;
}

std::pair<double, double> first_variation(const FourierQD& phi) {
    const cplx a0 = phi.a0();
    return {-4 * phi.l * a0.real(), -4 * phi.l * a0.imag()};
}

VariationReport second_variation(const FourierQD& phi) {
    VariationReport r;
    std::tie(r.first, r.first_rot) = first_variation(phi);
    r.Q = q_form(phi);
    r.QS = qs_form(phi);
    r.complex_hessian = 16 / M_PI * r.Q;
    // bilinear (n,-n) coupling: Q(zA, conj zA) = (pi l / 2) sum a_n a_{-n} / (1 + a^2)
    cplx coupling = 0;
    for (const auto& [n, an] : phi.coeffs) {
        auto it = phi.coeffs.find(-n);
        if (it == phi.coeffs.end()) continue;
        const double a = phi.freq(n);
        coupling += an * it->second / (1 + a * a);
    }
    coupling *= M_PI * phi.l / 2;
    r.second = 32 / M_PI * r.Q - 16 / M_PI * coupling.real();
    return r;
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr std::array<double, 8> kGlx = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975362};
constexpr std::array<double, 8> kGlw = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct ModeTable {
    std::vector<int> n;
    std::vector<cplx> a;     // coefficient
    std::vector<cplx> cA;    // 1/(eps n - 1)
    std::vector<cplx> cC;    // 1/(eps n + 1)
};

}  // namespace

VariationReport quadrature_oracle(const FourierQD& phi, int grid) {
    if (grid < 64) throw GridTooCoarse();
    const double l = phi.l;

    ModeTable m;
    int maxabs = 0;
    for (const auto& [n, an] : phi.coeffs) {
        const auto e = eichler_coeff(n, l);
        m.n.push_back(n);
        m.a.push_back(an);
        m.cA.push_back(e.A);
        m.cC.push_back(e.C);
        maxabs = std::max(maxabs, std::abs(n));
    }
    const size_t K = m.n.size();

    // x: uniform periodic grid, trapezoid; exact for the trig polynomials here
    // provided no nonzero mode-frequency difference is a multiple of Mx
    const int Mx = std::max(64, 4 * maxabs + 4);
    // y: composite 8-point Gauss-Legendre at the requested resolution
    const int panels = (grid + 7) / 8;

    double I_mu_re = 0, I_mu_im = 0, I_gdot = 0, I_q = 0, I_qs = 0;
    const double wx = l / Mx;

    for (int ix = 0; ix < Mx; ++ix) {
        const double x = l * ix / Mx;
        for (int ip = 0; ip < panels; ++ip) {
            const double y0 = M_PI * ip / panels, y1 = M_PI * (ip + 1) / panels;
            const double hc = (y1 - y0) / 2, mid = (y0 + y1) / 2;
            for (int ig = 0; ig < 8; ++ig) {
                const double y = mid + hc * kGlx[ig];
                const double wy = hc * kGlw[ig] * wx;
                const cplx zeta(x, y);
                const cplx z = std::exp(zeta), zinv = 1.0 / z;
                // z^{eps n} for the (sorted) modes by incremental powers of w
                const cplx w = std::exp(cplx(0, 2 * M_PI / l) * zeta);

                cplx phi_v = 0, A_v = 0, C_v = 0;
                cplx mode = std::pow(w, m.n.empty() ? 0 : m.n[0]);
                for (size_t j = 0; j < K; ++j) {
                    if (j > 0)
                        for (int s = m.n[j - 1]; s < m.n[j]; ++s) mode *= w;
                    const cplx t = m.a[j] * mode;
                    phi_v += t;
                    A_v += t * m.cA[j] * zinv;  // a_n z^{eps n - 1}/(eps n - 1)
                    C_v += t * m.cC[j] * z;     // a_n z^{eps n + 1}/(eps n + 1)
                }
                const double s2 = std::sin(y) * std::sin(y);
                const cplx mu = -4.0 * s2 * std::conj(phi_v);
                const cplx gdot_zeta = 2.0 * A_v.real() * z - 2.0 * C_v.real() * zinv;
                const cplx zA = z * A_v;

                I_mu_re += wy * mu.real();
                I_mu_im += wy * mu.imag();
                I_gdot += wy * (mu * gdot_zeta).real();
                I_q += wy * std::norm(zA) * s2;
                I_qs += wy * std::norm(phi_v) * s2 * s2;
            }
        }
    }

    VariationReport r;
    r.first = 2 / M_PI * I_mu_re;
    // mu -> i mu multiplies the integrand of Lemma-ellvar's first variation by i
    r.first_rot = 2 / M_PI * -I_mu_im;
    r.second = 4 / M_PI * I_gdot;
    r.Q = I_q;
    r.QS = I_qs;
    r.complex_hessian = 16 / M_PI * I_q;
    return r;
}

}  // namespace wplab::strip
