#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wplab/strip.hpp>

#include "support/oracles.hpp"

#include <random>

using namespace wplab;
using namespace wplab::strip;
using cplx = std::complex<double>;

namespace {

FourierQD random_qd(std::mt19937_64& rng, int max_mode, double lmin, double lmax,
                    bool bounded_class = true) {
    std::uniform_real_distribution<double> ul(lmin, lmax), uc(-1, 1);
    std::uniform_int_distribution<int> un(-max_mode, max_mode), k(1, max_mode + 1);
    const double l = ul(rng);
    std::map<int, cplx> cs;
    const int terms = k(rng) + 1;
    for (int i = 0; i < terms; ++i) {
        const int n = un(rng);
        cplx a(uc(rng), uc(rng));
        // negative modes of a differential bounded on the closed strip decay
        // like e^{-2 pi^2 |n| / l}
        if (bounded_class && n < 0) a *= std::exp(-2 * M_PI * M_PI * std::abs(n) / l);
        cs[n] += a;
    }
    return FourierQD(l, cs);
}

}  // namespace

TEST_CASE("eichler coefficients") {
    CHECK(eichler_combined_coeff(0, 1.0) == doctest::Approx(-2).epsilon(1e-15));
    CHECK(eichler_combined_coeff(1, 2 * M_PI) == doctest::Approx(-1).epsilon(1e-14));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ul(0.1, 20);
    std::uniform_int_distribution<int> un(-30, 30);
    for (int i = 0; i < 200; ++i) {
        const double l = ul(rng);
        const int n = un(rng);
        const auto e = eichler_coeff(n, l);
        const cplx alpha(0, 2 * M_PI * n / l);
        CHECK(std::abs(e.A - 1.0 / (alpha - 1.0)) < 1e-14);
        CHECK(std::abs(e.C - 1.0 / (alpha + 1.0)) < 1e-14);
        CHECK(std::abs(e.A - e.C - e.combined) < 1e-12);
    }
}

TEST_CASE("strip integrals: closed forms vs adaptive quadrature") {
    CHECK(strip_integral_sin2(0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(strip_integral_sin4(0) == doctest::Approx(3 * M_PI / 8).epsilon(1e-15));
    CHECK(strip_integral_sin2(1) == doctest::Approx(0.12476656965853650).epsilon(1e-14));
    CHECK(strip_integral_sin4(1) == doctest::Approx(0.074859941795121901).epsilon(1e-14));

    for (const double a : {0.01, 0.1, 1.0, 5.0, 10.0, 100.0}) {
        const double q2 = oracles::integrate(
            [a](double y) { return std::exp(-2 * a * y) * std::pow(std::sin(y), 2); }, 0, M_PI);
        const double q4 = oracles::integrate(
            [a](double y) { return std::exp(-2 * a * y) * std::pow(std::sin(y), 4); }, 0, M_PI);
        CHECK(std::fabs(strip_integral_sin2(a) - q2) < 1e-12 * std::fabs(q2) + 1e-300);
        CHECK(std::fabs(strip_integral_sin4(a) - q4) < 1e-11 * std::fabs(q4) + 1e-300);
    }
    // negative a (signed frequencies of the diagonal forms)
    for (const double a : {-0.3, -1.0, -4.0}) {
        const double q2 = oracles::integrate(
            [a](double y) { return std::exp(-2 * a * y) * std::pow(std::sin(y), 2); }, 0, M_PI);
        CHECK(strip_integral_sin2(a) == doctest::Approx(q2).epsilon(1e-12));
    }
    // elementary inequality chain via the exact ratio sin4/sin2 = 3/(a^2+4)
    for (double a = 0; a < 20; a += 0.37) {
        const double ratio = strip_integral_sin4(a) / strip_integral_sin2(a);
        CHECK(ratio == doctest::Approx(3 / (a * a + 4)).epsilon(1e-12));
        CHECK(ratio * (a * a + 1) <= 3.0 + 1e-12);       // (a^2+4)^-1 <= (a^2+1)^-1
        CHECK(4 * ratio * (a * a + 1) >= 3.0 - 1e-12);   // (a^2+1)^-1 <= 4 (a^2+4)^-1
    }
}

TEST_CASE("q_form and qs_form closed forms") {
    CHECK(q_form(FourierQD(1.0, {{0, 1.0}})) == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(q_form(FourierQD(2 * M_PI, {{1, 1.0}})) ==
          doctest::Approx(0.39196573865285747).epsilon(1e-14));
    CHECK(q_form(FourierQD(1.0, {})) == 0);
    CHECK(qs_form(FourierQD(1.0, {})) == 0);

    // single a0: QS = 3 pi l / 8 |a0|^2 and 3Q = 4QS exactly
    const FourierQD phi(1.7, {{0, cplx(0.3, -1.1)}});
    CHECK(qs_form(phi) == doctest::Approx(3 * M_PI / 8 * 1.7 * std::norm(cplx(0.3, -1.1)))
                              .epsilon(1e-14));
    CHECK(3 * q_form(phi) == doctest::Approx(4 * qs_form(phi)).epsilon(1e-14));

    CHECK_THROWS_AS(FourierQD(1.0, {{65, 1.0}}), DomainError);
    CHECK_THROWS_AS(FourierQD(0.0, {}), NonPositiveLength);
}

TEST_CASE("QS <= 3Q <= 4QS on random tuples") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        const FourierQD phi = random_qd(rng, 5, 0.5, 3.0);
        const double Q = q_form(phi), QS = qs_form(phi);
        const double scale = std::max({1.0, Q, QS});
        CHECK(3 * Q - QS >= -1e-12 * scale);
        CHECK(4 * QS - 3 * Q >= -1e-12 * scale);
    }
}

TEST_CASE("first variation") {
    const auto [f1, g1] = first_variation(FourierQD(1.0, {{0, 1.0}}));
    CHECK(f1 == doctest::Approx(-4).epsilon(1e-15));
    CHECK(g1 == doctest::Approx(0).epsilon(1e-15));
    const auto [f2, g2] = first_variation(FourierQD(1.0, {{0, cplx(0, 1)}}));
    CHECK(f2 == doctest::Approx(0).epsilon(1e-15));
    CHECK(g2 == doctest::Approx(-4).epsilon(1e-15));
    const auto [f3, g3] = first_variation(FourierQD(1.0, {{2, 5.0}, {-1, cplx(0, 2)}}));
    CHECK(f3 == 0);
    CHECK(g3 == 0);
}

TEST_CASE("second variation: weight-zero closed form and equality case") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-2, 2), ul(0.3, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double l = ul(rng);
        const cplx a0(u(rng), u(rng));
        const auto r = second_variation(FourierQD(l, {{0, a0}}));
        const double x = a0.real(), y = a0.imag();
        CHECK(r.second == doctest::Approx(8 * l * x * x + 24 * l * y * y).epsilon(1e-13));
        CHECK(r.complex_hessian == doctest::Approx(8 * l * std::norm(a0)).epsilon(1e-13));
        // elementary equality case of the variation inequality
        const double gap = 2 * l * r.second - r.first * r.first - 3 * r.first_rot * r.first_rot;
        CHECK(std::fabs(gap) < 1e-10 * (1 + 2 * l * r.second));
    }
}

TEST_CASE("variation inequalities on random tuples") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        const FourierQD phi = random_qd(rng, 8, 0.5, 3.0);
        const auto r = second_variation(phi);
        const double scale = std::max(1.0, r.second);
        CHECK(r.second >= -1e-12 * scale);
        CHECK(r.complex_hessian >= -1e-12 * scale);
        CHECK(r.second - r.complex_hessian >= -1e-11 * scale);
        CHECK(3 * r.complex_hessian - r.second >= -1e-11 * scale);
        const double gap =
            2 * phi.l * r.second - r.first * r.first - 3 * r.first_rot * r.first_rot;
        CHECK(gap >= -1e-10 * scale);
        // l ddbar l - 2 del l delbar l >= 0 with del l = (l' - i l'_rot)/2
        const double del2 = (r.first * r.first + r.first_rot * r.first_rot) / 4;
        CHECK(phi.l * r.complex_hessian - 2 * del2 >= -1e-10 * scale);
        // strict positivity of the gap when a nonzero higher mode is present
        bool higher = false;
        for (const auto& [n, a] : phi.coeffs)
            if (n != 0 && std::abs(a) > 1e-12) higher = true;
        if (higher) CHECK(gap > 0);
    }
}

TEST_CASE("annulus family: Hessian of (2 pi l)^(1/2) vanishes on the zero mode") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double l = u(rng), a0 = u(rng);  // real direction of the annulus family
        const auto r = second_variation(FourierQD(l, {{0, a0}}));
        const double f1 = std::sqrt(2 * M_PI) * 0.5 / std::sqrt(l);
        const double f2 = -std::sqrt(2 * M_PI) * 0.25 / std::pow(l, 1.5);
        const double hess = f2 * r.first * r.first + f1 * r.second;
        CHECK(std::fabs(hess) < 1e-10 * (1 + std::fabs(f1 * r.second)));
    }
}

TEST_CASE("quadrature oracle agrees with the closed forms") {
    // single zero-mode input
    const auto check_match = [](const FourierQD& phi, int grid, double tol) {
        const auto a = second_variation(phi);
        const auto b = quadrature_oracle(phi, grid);
        CHECK(std::fabs(a.first - b.first) < tol * std::max(1.0, std::fabs(a.first)));
        CHECK(std::fabs(a.first_rot - b.first_rot) < tol * std::max(1.0, std::fabs(a.first_rot)));
        CHECK(std::fabs(a.second - b.second) < tol * std::max(1.0, std::fabs(a.second)));
        CHECK(std::fabs(a.complex_hessian - b.complex_hessian) <
              tol * std::max(1.0, std::fabs(a.complex_hessian)));
        CHECK(std::fabs(a.Q - b.Q) < tol * std::max(1.0, std::fabs(a.Q)));
        CHECK(std::fabs(a.QS - b.QS) < tol * std::max(1.0, std::fabs(a.QS)));
    };
    check_match(FourierQD(1.3, {{0, cplx(0.7, -0.4)}}), 512, 1e-8);
    check_match(FourierQD(2 * M_PI, {{1, 1.0}}), 512, 1e-8);

    // first variation at 1e-10: x-orthogonality is exact on the periodic grid
    {
        const FourierQD phi(2.0, {{0, cplx(0.5, 0.25)}, {1, 1.0}, {3, cplx(0, -2)}});
        const auto b = quadrature_oracle(phi, 256);
        CHECK(std::fabs(b.first - (-4 * 2.0 * 0.5)) < 1e-10);
        CHECK(std::fabs(b.first_rot - (-4 * 2.0 * 0.25)) < 1e-10);
    }

    // mixed-sign support in the strip-bounded class
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) check_match(random_qd(rng, 6, 1.0, 3.0), 1024, 1e-8);

    // large-l unscaled mixed support pins the (n,-n) coupling
    for (int i = 0; i < 10; ++i) check_match(random_qd(rng, 2, 20.0, 40.0, false), 512, 1e-8);

    CHECK_THROWS_AS(quadrature_oracle(FourierQD(1.0, {{0, 1.0}}), 32), GridTooCoarse);
}

TEST_CASE("oracle grid refinement: doubling reduces the defect by >= 4x") {
    const FourierQD phi(0.8, {{0, 1.0}, {2, cplx(0.5, 0.5)}});
    const auto exact = second_variation(phi);
    const auto err = [&](int grid) {
        const auto b = quadrature_oracle(phi, grid);
        return std::fabs(b.second - exact.second) + std::fabs(b.Q - exact.Q);
    };
    const double e1 = err(64), e2 = err(128);
    CHECK(e1 > 1e-14);  // measurable at the base resolution
    CHECK(e1 / e2 >= 4.0);
}
