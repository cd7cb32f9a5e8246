#include "doctest.h"

#include "airy/airy.hpp"
#include "airy/wave.hpp"
#include "core/error.hpp"
#include "fredholm/quadrature.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>

using namespace softedge;

TEST_CASE("airy values at the origin")
{
    CHECK(airy_ai(0) == doctest::Approx(0.3550280538878172).epsilon(1e-15));
    CHECK(airy_ai_prime(0) == doctest::Approx(-0.2588194037928068).epsilon(1e-15));
    // closed forms 3^{-2/3}/Gamma(2/3), -3^{-1/3}/Gamma(1/3)
    CHECK(std::fabs(airy_ai(0) - std::pow(3.0, -2.0 / 3) / std::tgamma(2.0 / 3)) < 1e-15);
    CHECK(std::fabs(airy_ai_prime(0) + std::pow(3.0, -1.0 / 3) / std::tgamma(1.0 / 3)) < 1e-15);
}

TEST_CASE("airy anchor sweeps meet at the origin")
{
    CHECK(detail::airy_anchor_mismatch() < 1e-17);
}

TEST_CASE("airy against an independent Bessel-based evaluation")
{
    double worst = 0, worst_rel = 0;
    for (double x = -15; x <= 15; x += 0.0371) {
        double ref = boost::math::airy_ai(x);
        double refp = boost::math::airy_ai_prime(x);
        worst = std::max({worst, std::fabs(airy_ai(x) - ref), std::fabs(airy_ai_prime(x) - refp)});
        if (x > 0) worst_rel = std::max(worst_rel, std::fabs(airy_ai(x) / ref - 1));
    }
    CHECK(worst < 1e-13);
    CHECK(worst_rel < 1e-12);
}

TEST_CASE("airy ODE residual by finite differences")
{
    // eighth-order central stencil for the second derivative
    const double c[5] = {-205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
    double h = 0.02, worst = 0;
    for (double x = -10; x <= 5; x += 0.05) {
        double d2 = c[0] * airy_ai(x);
        for (int k = 1; k <= 4; ++k) d2 += c[k] * (airy_ai(x + k * h) + airy_ai(x - k * h));
        d2 /= h * h;
        worst = std::max(worst, std::fabs(d2 - x * airy_ai(x)));
    }
    CHECK(worst < 1e-10);
    double h2 = 1e-3;
    // derivative consistency: centered difference of Ai vs Ai'
    double w2 = 0;
    for (double x = -10; x <= 5; x += 0.05)
        w2 = std::max(w2, std::fabs((airy_ai(x + h2) - airy_ai(x - h2)) / (2 * h2) - airy_ai_prime(x)));
    CHECK(w2 < 1e-5);
}

TEST_CASE("airy asymptotic regions and range")
{
    for (double x : {-50.0, -30.0, -16.0, 13.0, 20.0, 40.0}) {
        double ref = boost::math::airy_ai(x);
        CHECK(std::fabs(airy_ai(x) - ref) <= 1e-13 * std::max(1.0, std::fabs(ref)));
        if (x > 0) CHECK(std::fabs(airy_ai(x) / ref - 1) < 1e-12);
    }
    CHECK_THROWS_AS(airy_ai(50.5), Error);
    CHECK_THROWS_AS(airy_ai(-60), Error);
    CHECK(double(detail::airy_ld(120).ai) == 0.0);
}

TEST_CASE("hermite wave functions")
{
    WaveFunctionFamily H{WaveKind::Hermite, 0, 2000};
    for (double x : {-2.0, 0.0, 0.7, 3.0})
        CHECK(wave(H, 0, x) == doctest::Approx(std::pow(M_PI, -0.25) * std::exp(-x * x / 2)).epsilon(1e-14));
    // parity
    for (int j : {1, 2, 7, 30, 301})
        for (double x : {0.3, 2.5, 11.0})
            CHECK(std::fabs(wave(H, j, -x) - (j % 2 ? -1 : 1) * wave(H, j, x)) <= 1e-14 * (1 + std::fabs(wave(H, j, x))));
    // no overflow for large degree deep in the tail
    double v = wave(H, 2000, 70.0);
    CHECK(std::isfinite(v));
    CHECK(std::fabs(v) < 1.0);
}

TEST_CASE("orthonormality by quadrature")
{
    WaveFunctionFamily H{WaveKind::Hermite, 0, 60};
    auto q = composite_gauss<double>(-16, 16, 32, 24);
    std::vector<std::vector<double>> phi(q.x.size(), std::vector<double>(61));
    for (size_t i = 0; i < q.x.size(); ++i) wave_block<double>(H, q.x[i], 0, 60, phi[i].data());
    double worst = 0;
    for (int j = 0; j <= 60; ++j)
        for (int k = 0; k <= j; ++k) {
            double s = 0;
            for (size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * phi[i][j] * phi[i][k];
            worst = std::max(worst, std::fabs(s - (j == k)));
        }
    CHECK(worst < 1e-10);

    for (double alpha : {0.0, 0.5, 3.0}) {
        WaveFunctionFamily L{WaveKind::Laguerre, alpha, 60};
        // sqrt(x)-type endpoint behaviour: substitute x = u^2
        auto r = composite_gauss<double>(0, 18, 36, 24);
        std::vector<std::vector<double>> f(r.x.size(), std::vector<double>(61));
        for (size_t i = 0; i < r.x.size(); ++i) wave_block<double>(L, r.x[i] * r.x[i], 0, 60, f[i].data());
        double w = 0;
        for (int j = 0; j <= 60; ++j)
            for (int k = 0; k <= j; ++k) {
                double s = 0;
                for (size_t i = 0; i < r.x.size(); ++i) s += 2 * r.x[i] * r.w[i] * f[i][j] * f[i][k];
                w = std::max(w, std::fabs(s - (j == k)));
            }
        CHECK(w < 1e-10);
    }
}

TEST_CASE("laguerre ground state and recurrence residual")
{
    WaveFunctionFamily L{WaveKind::Laguerre, 0.0, 100};
    for (double x : {0.0, 0.5, 4.0, 30.0}) CHECK(wave(L, 0, x) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-14));
    CHECK_THROWS_AS(wave(L, 0, -1.0), Error);
    CHECK_THROWS_AS(wave(L, 101, 1.0), Error);

    WaveFunctionFamily A{WaveKind::Laguerre, 2.5, 400};
    std::vector<double> v(401);
    for (double x : {3.0, 100.0, 700.0}) {
        wave_block<double>(A, x, 0, 400, v.data());
        for (int j = 1; j < 400; ++j) {
            double lhs = std::sqrt((j + 1) * (j + 1 + 2.5)) * v[j + 1];
            double rhs = (x - (2 * j + 3.5)) * v[j] - std::sqrt(j * (j + 2.5)) * v[j - 1];
            double scale = std::fabs(lhs) + std::fabs((x - (2 * j + 3.5)) * v[j]) + 1e-300;
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * scale);
        }
    }
}
