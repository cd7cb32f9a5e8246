#include "doctest.h"

#include "airy/airy.hpp"
#include "core/error.hpp"
#include "fredholm/chebyshev.hpp"
#include "fredholm/discretize.hpp"
#include "fredholm/jet.hpp"
#include "fredholm/limit.hpp"
#include "fredholm/quadrature.hpp"

#include <cmath>
#include <random>

using namespace softedge;

TEST_CASE("gauss-legendre integrates polynomials exactly")
{
    const auto& g = gauss_legendre<double>(17);
    for (int k = 0; k <= 33; ++k) {
        double s = 0;
        for (int i = 0; i < 17; ++i) s += g.w[i] * std::pow(g.x[i], k);
        double ref = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK(std::fabs(s - ref) < 1e-15);
    }
}

TEST_CASE("jet ring axioms")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    auto rnd = [&] {
        XiJet j(0.3, 6);
        for (int k = 0; k <= 6; ++k) j[k] = U(rng);
        return j;
    };
    for (int t = 0; t < 20; ++t) {
        XiJet a = rnd(), b = rnd(), c = rnd();
        XiJet l = (a * b) * c, r = a * (b * c);
        XiJet d = a * (b + c), e = a * b + a * c;
        XiJet cm = a * b - b * a;
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::fabs(l[k] - r[k]) < 1e-13);
            CHECK(std::fabs(d[k] - e[k]) < 1e-13);
            CHECK(std::fabs(cm[k]) < 1e-15);
        }
        b[0] = 2.0;
        XiJet q = (a / b) * b;
        for (int k = 0; k <= 6; ++k) CHECK(std::fabs(q[k] - a[k]) < 1e-12);
    }
    XiJet x = XiJet::variable(2.0, 5);
    XiJet s = x.sqrt();
    // sqrt(2 + e) Taylor coefficient of e^2 is -1/(16 sqrt 2)
    CHECK(s[2] == doctest::Approx(-1.0 / (16 * std::sqrt(2.0))).epsilon(1e-14));
    XiJet ss = s * s;
    CHECK(std::fabs(ss[0] - 2) < 1e-15);
    CHECK(std::fabs(ss[1] - 1) < 1e-15);
    for (int k = 2; k <= 5; ++k) CHECK(std::fabs(ss[k]) < 1e-15);
}

TEST_CASE("empty operator gives the unit jet")
{
    KernelDiscretization d;
    d.spectrum.assign(10, 0.0);
    for (double c : {0.0, 0.4, 1.0}) {
        XiJet j = det_jet(d, c, 0, SignMode::Linear);
        CHECK(j.value() == 1.0);
        XiJet j3 = det_jet(d, c, 3, SignMode::Linear);
        CHECK(j3[1] == 0.0);
    }
}

TEST_CASE("nystrom self-convergence and structure")
{
    auto d40 = discretize(Kernel::AiryK, 0.0, 40);
    auto d80 = discretize(Kernel::AiryK, 0.0, 80);
    double f40 = det_jet(d40, 1.0, 0, SignMode::Linear).value();
    double f80 = det_jet(d80, 1.0, 0, SignMode::Linear).value();
    CHECK(std::fabs(f40 - f80) < 1e-10);

    auto v = discretize(Kernel::VAi, -3.0, 80);
    CHECK((v.matrix - v.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-14);

    auto k8 = discretize(Kernel::AiryK, -8.0, 80);
    // positive semidefinite up to rounding of the trailing eigenvalues
    CHECK(k8.spectrum.front() < 1.0);
    CHECK(k8.spectrum.back() > -1e-15);
    CHECK(k8.spectrum[10] > 0.0);
    for (double s : {-8.0, 0.0, 4.0})
        for (Kernel k : {Kernel::AiryK, Kernel::VAi}) {
            auto d = discretize(k, s, 80);
            for (double l : d.spectrum) {
                CHECK(l > -1.0);
                CHECK(l <= 1.0);
            }
        }
}

TEST_CASE("spectral and dense determinant routes agree")
{
    for (double s : {-6.0, -2.0, 1.0})
        for (double xi : {0.3, 1.0}) {
            auto d = discretize(Kernel::AiryK, s, 80);
            double a = det_jet(d, xi, 0, SignMode::Linear).value();
            CHECK(std::fabs(a - det_direct(d, xi)) < 1e-10);
        }
}

TEST_CASE("trace oracles")
{
    for (double s : {-5.0, -1.0, 0.0, 2.0}) {
        auto d = discretize(Kernel::AiryK, s, 80);
        double tr = 0;
        for (double l : d.spectrum) tr += l;
        XiJet j = det_jet(d, 0.0, 1, SignMode::Linear);
        CHECK(j.value() == 1.0);
        CHECK(std::fabs(j[1] + tr) < 1e-10);
        // closed-form antiderivative of Ai'^2 - x Ai^2
        AiryPair a = airy(s);
        double ref = (2 * s * s * a.ai * a.ai - 2 * s * a.aip * a.aip - a.ai * a.aip) / 3;
        CHECK(std::fabs(tr - ref) < 1e-9);
    }
}

TEST_CASE("limit laws: trivial cases, factorization, monotonicity, tails")
{
    for (int beta : {1, 2, 4})
        for (double s : {-7.0, 0.0, 5.0}) CHECK(limit_F(beta, s, 0.0) == 1.0);
    for (double xi : {0.25, 0.5, 1.0})
        for (double s = -8; s <= 4; s += 1.0) {
            double f2 = limit_F(2, s, xi);
            CHECK(std::fabs(F_pm(1, s, xi) * F_pm(-1, s, xi) - f2) < 1e-8);
        }
    for (double s : {-4.0, -1.0, 2.0}) {
        // the (1 - xi/sqrt(xi_bar)) branch vanishes at xi = 1
        CHECK(std::fabs(limit_F(1, s, 1.0) - F_pm(1, s, 1.0)) < 1e-12);
    }
    for (int beta : {1, 2, 4})
        for (int k = 0; k <= 4; ++k) {
            double prev = -1;
            for (double s = -10; s <= 6; s += 0.5) {
                double v = kth_largest_limit_cdf(beta, k, s);
                CHECK(v >= prev - 1e-12);
                prev = v;
            }
            // beta = 1, k = 0 keeps the heavier tail (1/2) int_s^inf Ai
            if (beta != 1 || k > 0) CHECK(std::fabs(kth_largest_limit_cdf(beta, k, 7.0) - 1) < 1e-9);
        }
    {
        auto q = composite_gauss<double>(7.0, 40.0, 20, 20);
        double tail = 0;
        for (size_t i = 0; i < q.x.size(); ++i) tail += q.w[i] * airy_ai(q.x[i]) / 2;
        double gap = 1 - kth_largest_limit_cdf(1, 0, 7.0);
        CHECK(gap > 1e-7);
        CHECK(std::fabs(gap - tail) < 1e-6 * tail);
    }
    CHECK(kth_largest_limit_cdf(2, 0, -1.0) == limit_F(2, -1.0, 1.0));
    CHECK_THROWS_AS(limit_F(2, 0.0, 1.5), Error);
    CHECK_THROWS_AS(limit_F(2, 9.0, 1.0), Error);
    CHECK_THROWS_AS(kth_largest_limit_cdf(2, 3, 0.0, 2), Error);
    auto d = discretize(Kernel::VAi, 0.0, 40);
    CHECK_THROWS_AS(det_jet(d, 0.0, 2, SignMode::MinusSqrt), Error);
}

TEST_CASE("chebyshev differentiation")
{
    for (double s0 : {-1.0, 0.5, 3.0}) {
        auto d = s_derivatives([](double x) { return std::exp(x); }, s0, 8);
        for (int k = 0; k <= 8; ++k) {
            INFO("k = " << k << " s0 = " << s0);
            double tol = k <= 6 ? 1e-9 : s_derivative_tolerance(k);
            CHECK(std::fabs(d[k] - std::exp(s0)) < tol * std::exp(s0));
        }
    }
    auto c = s_derivatives([](double x) { return x * x * x; }, 0.7, 5);
    CHECK(std::fabs(c[3] - 6) < 1e-9);
    CHECK(std::fabs(c[4]) < 1e-9);
    CHECK(std::fabs(c[5]) < 1e-9);
    // a kink is caught by the degree-doubling check
    CHECK_THROWS_AS(s_derivatives([](double x) { return std::fabs(x - 0.1); }, 0.0, 2), Error);

    ChebSeries f = ChebSeries::fit([](double x) { return std::cos(x); }, -2, 3, 40);
    CHECK(std::fabs(f.integral()(3.0) - (std::sin(3.0) - std::sin(-2.0))) < 1e-14);
    CHECK(std::fabs(f.definite_integral() - (std::sin(3.0) - std::sin(-2.0))) < 1e-14);
    CHECK(std::fabs(f.derivative()(0.4) + std::sin(0.4)) < 1e-12);
}
