#include "doctest.h"

#include "airy/airy.hpp"
#include "core/error.hpp"
#include "fredholm/chebyshev.hpp"
#include "fredholm/limit.hpp"
#include "painleve/painleve.hpp"

#include <cmath>

using namespace softedge;

TEST_CASE("collocation residual and right pin")
{
    for (double xi : {0.2, 0.5, 0.8, 1.0}) {
        PIISolution sol = solve_q(xi);
        CHECK(sol.residual < 1e-9);
        CHECK(std::fabs(sol.q_values.front() - std::sqrt(xi) * airy_ai(sol.L_plus)) < 1e-10);
        CHECK(sol.grid.front() == doctest::Approx(sol.L_plus));
        CHECK(sol.grid.back() == doctest::Approx(-sol.L_minus));
        // residual recomputed from the stored series at off-grid points
        for (double s = -9.5; s <= 9.5; s += 0.37) {
            double q = sol.q_at(s);
            double q2 = sol.qp.derivative()(s);
            CHECK(std::fabs(q2 - s * q - 2 * q * q * q) < 1e-8);
        }
    }
}

TEST_CASE("small xi follows the Airy linearization")
{
    PIISolution sol = solve_q(1e-6);
    double dev = 0;
    for (double s = -10; s <= 10; s += 0.01) dev = std::max(dev, std::fabs(sol.q_at(s) - 1e-3 * airy_ai(s)));
    CHECK(dev < 1e-8);
}

TEST_CASE("right-to-left integration oracle")
{
    // q(0; xi) from an independent 40-digit Taylor integration started at s = 10 with Airy data
    CHECK(std::fabs(solve_q(0.2).q_at(0) - 0.15982320394978) < 1e-11);
    CHECK(std::fabs(solve_q(0.5).q_at(0) - 0.255231206454452) < 1e-11);
    PIISolution s8 = solve_q(0.8);
    CHECK(std::fabs(s8.q_at(0) - 0.326103265196755) < 1e-11);
    CHECK(std::fabs(s8.q_at(-8) - 0.41419083429117) < 1e-10);
}

TEST_CASE("Hastings-McLeod q(0) from the determinant")
{
    // (log F2)'' = -q^2
    auto logF = [](double s) { return std::log(limit_F(2, s, 1.0)); };
    SDerivOptions opt;
    opt.width = 4;
    auto d = s_derivatives(logF, 0.0, 2, opt);
    double q0 = std::sqrt(-d[2]);
    CHECK(std::fabs(solve_q(1.0).q_at(0) - q0) < 1e-6);
}

TEST_CASE("window stability")
{
    PIIOptions a, b;
    b.L_plus = 8;
    b.degree = 240;
    for (double xi : {0.5, 1.0}) {
        PIISolution s1 = solve_q(xi, a), s2 = solve_q(xi, b);
        for (double s = -9; s <= 6; s += 0.5) CHECK(std::fabs(s1.q_at(s) - s2.q_at(s)) < 1e-10);
    }
}

TEST_CASE("F2 agrees with the determinant route")
{
    for (double xi : {0.5, 1.0}) {
        PIISolution sol = solve_q(xi);
        for (double s = -6; s <= 4 + 1e-9; s += 0.25) {
            double det = limit_F(2, s, xi);
            double pii = F_via_painleve(sol, PTarget::F2, s);
            CHECK(std::fabs(det - pii) < 1e-7);
            double fp = F_via_painleve(sol, PTarget::Fplus, s);
            double fm = F_via_painleve(sol, PTarget::Fminus, s);
            CHECK(std::fabs(fp * fm - pii) < 1e-8);
            CHECK(std::fabs(fp - F_pm(+1, s, xi)) < 1e-7);
            CHECK(std::fabs(fm - F_pm(-1, s, xi)) < 1e-7);
        }
    }
    CHECK(F_via_painleve(PTarget::Fplus, -3.0, 0.0) == 1.0);
    CHECK(F_via_painleve(PTarget::Fminus, -3.0, 0.0) == 1.0);
    CHECK(std::fabs(F_via_painleve(PTarget::F2, 0.0, 1.0) - limit_F(2, 0.0, 1.0)) < 1e-7);
}

TEST_CASE("log-derivatives of the determinants")
{
    SDerivOptions opt;
    opt.width = 3;
    opt.noise = 1e-15;
    for (double xi : {0.5, 1.0}) {
        PIISolution sol = solve_q(xi);
        for (double s = -6; s <= 4 + 1e-9; s += 0.5) {
            double q = sol.q_at(s), p = sol.qp_at(s);
            double u = p * p - s * q * q - q * q * q * q;
            auto d2 = s_derivatives([&](double x) { return std::log(limit_F(2, x, xi)); }, s, 1, opt);
            CHECK(std::fabs(d2[1] - u) < 1e-6);
            auto dp = s_derivatives([&](double x) { return std::log(F_pm(+1, x, xi)); }, s, 1, opt);
            auto dm = s_derivatives([&](double x) { return std::log(F_pm(-1, x, xi)); }, s, 1, opt);
            CHECK(std::fabs(dp[1] - (0.5 * u + 0.5 * q)) < 1e-6);
            CHECK(std::fabs(dm[1] - (0.5 * u - 0.5 * q)) < 1e-6);
        }
    }
}

TEST_CASE("total integral")
{
    for (double xi : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        TotalIntegral r = total_integral(xi);
        CHECK(std::fabs(r.value - std::atanh(std::sqrt(xi))) < 1e-6);
        CHECK(r.tail_error < 1e-7);
    }
    CHECK(std::fabs(total_integral(0.25).value - 0.5493061) < 1e-6);
    CHECK(std::fabs(total_integral(0.81).value - 1.4722195) < 1e-6);
    CHECK(std::fabs(total_integral(1e-10).value) < 1e-4);
}

TEST_CASE("exp(-int_s q) approaches its far-left limit")
{
    for (double xi : {0.3, 0.7}) {
        PIISolution sol = solve_q(xi);
        auto tail = [&](double s) { return sol.int_q(sol.L_plus) - sol.int_q(s) + sol.right_tail_q; };
        // monotone where q > 0: right of the last sign change of q
        double z = -sol.L_minus;
        for (double s = sol.L_plus; s > -sol.L_minus; s -= 0.01)
            if (sol.q_at(s) <= 0) {
                z = s;
                break;
            }
        CHECK(z < -1.0);
        double prev = 0;
        for (double s = z + 0.01; s <= sol.L_plus; s += 0.05) {
            double v = std::exp(-tail(s));
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
        // at s = S far left the remaining piece int_{-inf}^{S} q is the by-parts remainder
        TotalIntegral r = total_integral(xi);
        double at_far = std::exp(-(r.value - r.left_remainder));
        double limit = std::exp(-std::atanh(std::sqrt(xi)));
        CHECK(std::fabs(r.left_remainder) < 5e-3);
        CHECK(std::fabs(at_far - limit) < 1.1 * std::fabs(r.left_remainder) * at_far + 1e-6);
        CHECK(std::fabs(std::exp(-r.value) - limit) < 1e-6);
    }
}

TEST_CASE("painleve errors")
{
    CHECK_THROWS_AS(solve_q(0.0), Error);
    CHECK_THROWS_AS(solve_q(1.5), Error);
    PIIOptions o;
    o.L_plus = 5;
    CHECK_THROWS_AS(solve_q(0.5, o), Error);
    o = {};
    o.L_minus = 12;
    CHECK_THROWS_AS(solve_q(0.5, o), Error);
    PIISolution sol = solve_q(0.5);
    CHECK_THROWS_AS(sol.q_at(-11), Error);
    CHECK_THROWS_AS(F_via_painleve(sol, PTarget::F2, 11), Error);
    CHECK_THROWS_AS(total_integral(1.0), Error);
}
