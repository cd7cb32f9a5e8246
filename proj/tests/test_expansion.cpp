#include "doctest.h"

#include "core/error.hpp"
#include "expansion/expansion.hpp"
#include "expansion/extract.hpp"
#include "expansion/rational.hpp"
#include "expansion/table_io.hpp"
#include "finiten/finiten.hpp"
#include "fredholm/limit.hpp"

#include <cmath>
#include <random>

using namespace softedge;

namespace {

QPoly s_(int e = 1) { return QPoly::var(QPoly::S, e); }
QPoly t_(int e = 1) { return QPoly::var(QPoly::Tau, e); }
QPoly r(long a, long b) { return QPoly::rational(a, b); }

// the j = 1, 2 rows as frozen from the extraction
std::vector<QPoly> row1() { return {r(1, 5) * s_(2) - r(2, 5) * s_(2) * t_(), r(1, 10) * t_() - r(3, 10)}; }
std::vector<QPoly> row2()
{
    return {r(-141, 350) + r(47, 175) * t_() + r(1, 350) * t_(2) +
                s_(3) * (r(-8, 175) - r(18, 175) * t_() + r(43, 175) * t_(2)),
            s_() * (r(39, 175) - r(26, 175) * t_() - r(4, 175) * t_(2)) +
                s_(4) * (r(1, 50) - r(2, 25) * t_() + r(2, 25) * t_(2)),
            s_(2) * (r(-3, 50) + r(7, 50) * t_() - r(1, 25) * t_(2)),
            r(9, 200) - r(3, 100) * t_() + r(1, 200) * t_(2)};
}

// f = exp(-s^2/2): f^(k) = (-1)^k He_k(s) f
std::vector<double> gauss_derivs(double s)
{
    double f = std::exp(-s * s / 2);
    double he[5] = {1, s, s * s - 1, s * s * s - 3 * s, s * s * s * s - 6 * s * s + 3};
    std::vector<double> out(5);
    for (int k = 0; k <= 4; ++k) out[k] = (k % 2 ? -1 : 1) * he[k] * f;
    return out;
}

} // namespace

TEST_CASE("simplest rational in a window")
{
    CHECK(*simplest_rational(0.2, 1e-9, 1000) == mpq_class(1, 5));
    CHECK(*simplest_rational(-141.0 / 350 + 3e-8, 1e-7, 1000) == mpq_class(-141, 350));
    CHECK(*simplest_rational(M_PI, 1e-2, 1000) == mpq_class(22, 7));
    CHECK(*simplest_rational(M_PI, 3e-7, 1000) == mpq_class(355, 113));
    CHECK(*simplest_rational(2.5e-8, 1e-7, 10) == 0);
    CHECK(*simplest_rational(7.0, 1e-12, 1) == 7);
    CHECK_FALSE(simplest_rational(1.0 / 3, 1e-6, 2).has_value());
}

TEST_CASE("table text round trip")
{
    const CoefficientTable& t = default_table();
    CoefficientTable u = parse_table(format_table(t));
    REQUIRE(u.entries().size() == t.entries().size());
    for (const auto& [key, e] : t.entries()) {
        const auto& [b, j, k] = key;
        CHECK(u.at(b, j, k).poly == e.poly);
        CHECK(u.at(b, j, k).provenance == e.provenance);
        CHECK(u.at(b, j, k).certificate == e.certificate);
    }
    CHECK(u.source == t.source);
}

TEST_CASE("table parse errors")
{
    CHECK_THROWS_AS(parse_table("P 2 1 1 derived-numeric 1\n  2 0 1 5\n"), Error);
    const std::string head = "# format: softedge-coefficients 1\n";
    CHECK_THROWS_AS(parse_table(head + "P 2 1 1 derived-numeric 2\n  2 0 1 5\n"), Error);
    CHECK_THROWS_AS(parse_table(head + "P 2 1 1 derived-numeric 1\n  2 0 1 0\n"), Error);
    CHECK_THROWS_AS(parse_table(head + "P 2 1 1 made-up 1\n  2 0 1 5\n"), Error);
    CHECK_NOTHROW(parse_table(head + "P 2 1 1 derived-numeric 1 residual=1e-9\n  2 0 1 5\n"));
}

TEST_CASE("shipped table rows")
{
    const CoefficientTable& t = default_table();
    for (int b : {1, 2, 4}) CHECK(t.max_order(b) == 2);
    CHECK(t.row(2, 1) == row1());
    CHECK(t.row(2, 2) == row2());
    CHECK(t.duality_holds());
    CHECK(t.row(1, 1) == transfer_j1(row1()));
    CHECK(t.row(1, 2) == transfer_j2(row1(), row2()));
    // products of the j = 1 terms reappear at j = 2
    CHECK(t.at(2, 2, 4).poly == r(1, 2) * t.at(2, 1, 2).poly * t.at(2, 1, 2).poly);
    CHECK(t.at(2, 2, 2).poly.coefficient(0, 0) - s_() * (r(39, 175) - r(26, 175) * t_() - r(4, 175) * t_(2)) ==
          r(1, 2) * t.at(2, 1, 1).poly * t.at(2, 1, 1).poly);
    for (int k = 1; k <= 4; ++k) {
        CHECK(t.at(2, 2, k).provenance == Provenance::DerivedNumeric);
        CHECK(t.at(1, 2, k).provenance == Provenance::PaperRelation);
    }
}

TEST_CASE("graded basis")
{
    auto b1 = graded_basis(1);
    REQUIRE(b1.size() == 2);
    CHECK((b1[0].k == 1 && b1[0].d == 2));
    CHECK((b1[1].k == 2 && b1[1].d == 0));
    auto b2 = graded_basis(2);
    CHECK(b2.size() == 7);
    for (auto t : b2) {
        CHECK((t.d - 2 - t.k) % 3 == 0);
        CHECK(t.d + 2 * t.k <= 8);
    }
}

TEST_CASE("planted coefficients are recovered exactly")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0, 1e-9);
    std::vector<double> grid;
    for (double s = -4; s <= 3 + 1e-9; s += 0.25) grid.push_back(s);
    for (int j : {1, 2}) {
        std::vector<QPoly> truth = j == 1 ? row1() : row2();
        std::vector<CorrectionCurve> curves;
        for (double tau : {0.0, 1.0, 8.0 / 9, 0.75, 0.64, 5.0 / 9}) {
            CorrectionCurve c{tau, grid, {}, {}};
            for (double s : grid) c.F.push_back(gauss_derivs(s));
            c.G = assemble(truth, tau, grid, c.F);
            for (auto& g : c.G) g += noise(rng);
            curves.push_back(c);
        }
        Reconstruction rec = reconstruct_polynomials(curves, j);
        CHECK(rec.rounded);
        CHECK(rec.row == truth);
        CHECK(rec.certificate < 1e-8);
    }
}

TEST_CASE("reconstruction refuses non-rational data")
{
    std::vector<double> grid;
    for (double s = -4; s <= 3 + 1e-9; s += 0.25) grid.push_back(s);
    std::vector<CorrectionCurve> curves;
    for (double tau : {0.0, 1.0, 0.75}) {
        CorrectionCurve c{tau, grid, {}, {}};
        for (double s : grid) {
            c.F.push_back(gauss_derivs(s));
            c.G.push_back(std::sin(3 * s) * std::exp(-s * s));
        }
        curves.push_back(c);
    }
    CHECK_FALSE(reconstruct_polynomials(curves, 1).rounded);
}

TEST_CASE("expansion at order zero is the limit law")
{
    EnsembleSpec gue{Family::Gaussian, 2, 40, 0};
    for (double s : {-3.0, -1.0, 0.5})
        for (double xi : {0.4, 1.0}) {
            ExpansionValue v = evaluate({gue, s, InducedOp::generating(xi), 0});
            CHECK(std::fabs(v.value - limit_F(2, s, xi)) < 1e-12);
        }
    ExpansionValue z = evaluate({gue, 0.3, InducedOp::generating(0.0), 2});
    CHECK(z.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("grid and pointwise expansions agree")
{
    EnsembleSpec goe{Family::Gaussian, 1, 10, 0};
    InducedOp op = InducedOp::kth_largest(1);
    std::vector<double> s{-3.0, -1.5, 0.0, 1.0};
    ExpansionGrid g = evaluate_grid(goe, op, 2, s, default_table());
    for (size_t i = 0; i < s.size(); ++i) {
        ExpansionValue v = evaluate({goe, s[i], op, 2});
        CHECK(std::fabs(g.value[2][i] - v.value) < 1e-9);
        double sum = 0;
        for (double o : v.orders) sum += o;
        CHECK(std::fabs(sum - v.value) < 1e-14);
    }
}

TEST_CASE("each order shrinks the error against exact finite n")
{
    EnsembleSpec lue{Family::Laguerre, 2, 60, 120};
    ScalingParams fr = expansion_frame(lue);
    double err[3] = {0, 0, 0};
    for (double s = -4; s <= 2 + 1e-9; s += 0.5) {
        double exact = E2n(lue, fr.mu + fr.sigma * s, 0.5);
        for (int m = 0; m <= 2; ++m)
            err[m] = std::max(err[m], std::fabs(evaluate({lue, s, InducedOp::generating(0.5), m}).value - exact));
    }
    CHECK(err[1] < err[0] / 10);
    CHECK(err[2] < err[1] / 10);
}

TEST_CASE("requests beyond the table fail")
{
    EnsembleSpec gue{Family::Gaussian, 2, 40, 0};
    CHECK_THROWS_AS(evaluate({gue, 0.0, InducedOp::generating(1.0), 3}), Error);
}
