#include "doctest.h"

#include "core/ensemble.hpp"
#include "core/error.hpp"
#include "finiten/finiten.hpp"
#include "fredholm/limit.hpp"

#include <cmath>
#include <numbers>

using namespace softedge;

namespace {

// erfc from the Maclaurin series of erf, adequate for |x| <= 3
double erfc_series(double x)
{
    long double sum = 0, term = x;
    for (int k = 0; k < 200; ++k) {
        sum += term / (2 * k + 1);
        term *= -(long double)x * x / (k + 1);
    }
    return double(1 - 2 / std::sqrt(std::numbers::pi_v<long double>) * sum);
}

EnsembleSpec gue(int n) { return {Family::Gaussian, 2, n, 0.0}; }
EnsembleSpec lue(int n, double p) { return {Family::Laguerre, 2, n, p}; }

double sup_error(const EnsembleSpec& spec, double xi)
{
    ScalingParams sc = plain_frame(spec);
    double sup = 0;
    for (double s = -6; s <= 3 + 1e-9; s += 0.25)
        sup = std::max(sup, std::fabs(E2n(spec, sc.mu + sc.sigma * s, xi) - limit_F(2, s, xi)));
    return sup;
}

} // namespace

TEST_CASE("ground state closed forms")
{
    GramOptions full;
    full.full_block = true;
    CHECK(gram(gue(1), 0.0, full).entry(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x : {-1.5, 0.0, 1.0, 2.5})
        for (double xi : {0.3, 0.7, 1.0}) CHECK(std::fabs(E2n(gue(1), x, xi) - (1 - xi * erfc_series(x) / 2)) < 1e-14);
    // Laguerre n = 1, alpha = 2: mass on (x, inf) is e^{-x}(1 + x + x^2/2)
    for (double x : {0.5, 2.0, 6.0}) {
        double tail = std::exp(-x) * (1 + x + x * x / 2);
        CHECK(std::fabs(E2n(lue(1, 3.0), x, 0.7) - (1 - 0.7 * tail)) < 1e-14);
    }
}

TEST_CASE("far-left and near-origin limits")
{
    for (int n : {1, 4, 10})
        for (double xi : {0.25, 0.5, 0.9}) CHECK(std::fabs(E2n(gue(n), -30.0, xi) - std::pow(1 - xi, n)) < 1e-10);
    for (double p : {6.0, 8.0}) {
        GramCache c = gram(lue(6, p), 1e-10);
        for (auto l : c.eigenvalues) CHECK(std::fabs(double(l) - 1.0) < 1e-8);
    }
}

TEST_CASE("gram matrix invariants")
{
    GramOptions full;
    full.full_block = true;
    for (auto spec : {gue(12), lue(12, 20.0), lue(9, 9.0)}) {
        ScalingParams sc = plain_frame(spec);
        for (double s : {-8.0, -3.0, 0.0, 2.0}) {
            GramCache c = gram(spec, sc.mu + sc.sigma * s, full);
            for (int j = 0; j < spec.n; ++j)
                for (int k = 0; k < spec.n; ++k) CHECK(c.entry(j, k) == c.entry(k, j));
            for (auto l : c.eigenvalues) {
                CHECK(l >= -1e-10L);
                CHECK(l <= 1 + 1e-10L);
            }
            // block reduction agrees with the full matrix
            GramCache b = gram(spec, sc.mu + sc.sigma * s);
            CHECK(std::fabs(E2n_jet(b, 1.0, 0).value() - E2n_jet(c, 1.0, 0).value()) < 1e-13);
            // refining the panels does not move the answer
            GramOptions fine;
            fine.nodes_per_panel = 32;
            GramCache f = gram(spec, sc.mu + sc.sigma * s, fine);
            CHECK(std::fabs(E2n_jet(f, 0.6, 0).value() - E2n_jet(b, 0.6, 0).value()) < 1e-13);
        }
    }
}

TEST_CASE("jets, gaps and counts")
{
    for (auto spec : {gue(10), lue(10, 25.0)}) {
        ScalingParams sc = plain_frame(spec);
        for (double s : {-4.0, -1.0, 1.5}) {
            double x = sc.mu + sc.sigma * s;
            GramCache c = gram(spec, x);
            auto gaps = gap_probabilities(c);
            double sum = 0;
            for (double g : gaps) {
                CHECK(g >= -1e-12);
                sum += g;
            }
            CHECK(std::fabs(sum - 1) < 1e-9);
            // polynomial in xi: expansion about 0 to order n evaluated at 1
            XiJet poly = E2n_jet(c, 0.0, spec.n);
            CHECK(std::fabs(poly.eval(1.0) - E2n_jet(c, 1.0, 0).value()) < 1e-10);
            CHECK(std::fabs(-poly[1] - double(c.trace)) < 1e-10);
            CHECK(gaps[0] == doctest::Approx(E2n_jet(c, 1.0, 0).value()));
        }
    }
}

TEST_CASE("k-th largest finite CDF")
{
    EnsembleSpec g = gue(10);
    ScalingParams sc = plain_frame(g);
    double v = kth_largest_finite_cdf(g, 0, sc.mu);
    CHECK(v > 0);
    CHECK(v < 1);
    // smallest level: P(x_(1) <= x) runs from 0 to 1
    CHECK(kth_largest_finite_cdf(g, 9, 30.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(kth_largest_finite_cdf(g, 9, -30.0)) < 1e-12);
    for (int k : {0, 1, 3}) {
        double prev = -1;
        for (double x = -2; x <= 7; x += 0.1) {
            double c = kth_largest_finite_cdf(g, k, x);
            CHECK(c >= prev - 1e-13);
            prev = c;
        }
    }
    double prev = 0;
    for (int k = 0; k < 10; ++k) {
        double c = kth_largest_finite_cdf(g, k, sc.mu - sc.sigma);
        CHECK(c >= prev - 1e-13);
        CHECK(c <= 1 + 1e-12);
        prev = c;
    }
    CHECK_THROWS_AS(kth_largest_finite_cdf(g, 10, 0.0), Error);
    CHECK_THROWS_AS(gram({Family::Gaussian, 1, 5, 0}, 0.0), Error);
}

TEST_CASE("first-order convergence to the limit law")
{
    for (double xi : {0.5, 1.0}) {
        std::vector<double> lh, le;
        for (int n : {20, 40, 80, 160}) {
            lh.push_back(std::log(plain_frame(gue(n)).h));
            le.push_back(std::log(sup_error(gue(n), xi)));
        }
        double slope = (le.back() - le.front()) / (lh.back() - lh.front());
        CHECK(std::fabs(slope - 1.0) < 0.2);
    }
}
