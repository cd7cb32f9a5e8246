#include "doctest.h"

#include "core/error.hpp"
#include "symbolic/qpoly.hpp"
#include "symbolic/symbolic.hpp"

#include <random>

using namespace softedge;

namespace {

const QPoly s = QPoly::var(QPoly::S), tau = QPoly::var(QPoly::Tau), q = QPoly::var(QPoly::Q),
            p = QPoly::var(QPoly::P);

QPoly R(long a, long b) { return QPoly::rational(a, b); }

QPoly random_poly(std::mt19937& rng, int terms, int maxdeg)
{
    std::uniform_int_distribution<int> d(0, maxdeg), c(-9, 9), den(1, 7);
    QPoly out;
    for (int i = 0; i < terms; ++i) out += QPoly::monomial({d(rng), d(rng) / 2, d(rng), d(rng)}, mpq_class(c(rng), den(rng)));
    return out;
}

Status status_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.status();
    }
    return Status::ok;
}

} // namespace

TEST_CASE("qpoly arithmetic is canonical")
{
    QPoly a = s * q + R(1, 2) * p;
    CHECK((a - a).is_zero());
    CHECK((a - a).terms().empty());
    CHECK(pow(q + 1, 2) == q * q + QPoly(2) * q + 1);
    CHECK(R(2, 4) == R(1, 2));
    CHECK((s * s * tau).ds() == QPoly(2) * s * tau);
    CHECK((s * q * q + R(3, 2) * s * s * p).coefficient(2, 0) == s);
    CHECK((s * q * q).specialize(mpq_class(1, 3), 0) == R(1, 3) * q * q);
    CHECK((R(-1, 4) + s * s * tau).str() == "s^2*tau - 1/4");
}

TEST_CASE("painleve derivation rules")
{
    CHECK(pii_derive(q) == p);
    CHECK(pii_derive(p) == s * q + QPoly(2) * pow(q, 3));
    CHECK(pii_derive(p * p - s * q * q - pow(q, 4)) == -(q * q));
    CHECK(pii_derive(s * tau) == tau);
    CHECK(pii_derive(QPoly(7)).is_zero());

    std::mt19937 rng(11);
    for (int t = 0; t < 25; ++t) {
        QPoly f = random_poly(rng, 6, 4), g = random_poly(rng, 6, 4);
        CHECK(pii_derive(f * g) == pii_derive(f) * g + f * pii_derive(g));
        CHECK(pii_derive(f + g) == pii_derive(f) + pii_derive(g));
    }
}

TEST_CASE("log-derivative towers")
{
    auto t2 = logderiv_tower(TowerBase::F2, 2);
    CHECK(t2[0] == p * p - s * q * q - pow(q, 4));
    CHECK(t2[1] == QPoly(-2) * pow(q, 4) * p * p - QPoly(2) * s * q * q * p * p + pow(p, 4) + s * s * pow(q, 4) +
                       pow(q, 8) + QPoly(2) * s * pow(q, 6) - q * q);
    for (int sign : {+1, -1}) {
        auto t = logderiv_tower(sign > 0 ? TowerBase::Fplus : TowerBase::Fminus, 2);
        QPoly sg(sign);
        CHECK(t[0] == R(1, 2) * p * p - R(1, 2) * pow(q, 4) - R(1, 2) * s * q * q + sg * R(1, 2) * q);
        QPoly second = R(-1, 2) * pow(q, 4) * p * p - R(1, 2) * s * q * q * p * p + sg * R(1, 2) * q * p * p +
                       R(1, 4) * pow(p, 4) + sg * R(1, 2) * p + R(1, 4) * s * s * pow(q, 4) + R(1, 4) * pow(q, 8) +
                       R(1, 2) * s * pow(q, 6) - sg * R(1, 2) * pow(q, 5) - sg * R(1, 2) * s * pow(q, 3) -
                       R(1, 4) * q * q;
        CHECK(t[1] == second);
    }
    for (auto base : {TowerBase::F2, TowerBase::Fplus, TowerBase::Fminus}) {
        auto t = logderiv_tower(base, 10);
        REQUIRE(t.size() == 10);
        for (int k = 0; k + 1 < 10; ++k) CHECK((t[k + 1] - pii_derive(t[k]) - t[0] * t[k]).is_zero());
    }
    CHECK_THROWS_AS(logderiv_tower(TowerBase::F2, 11), Error);
    CHECK_THROWS_AS(logderiv_tower(TowerBase::F2, 0), Error);
}

TEST_CASE("product of F+ and F- towers")
{
    // F2 = F+ F-: r1(F2) = r1(F+) + r1(F-), r2(F2) = r2(F+) + 2 r1(F+) r1(F-) + r2(F-)
    auto t2 = logderiv_tower(TowerBase::F2, 2);
    auto tp = logderiv_tower(TowerBase::Fplus, 2);
    auto tm = logderiv_tower(TowerBase::Fminus, 2);
    CHECK(t2[0] == tp[0] + tm[0]);
    CHECK(t2[1] == tp[1] + QPoly(2) * tp[0] * tm[0] + tm[1]);
    // the inhomogeneous part of the j = 1 relation vanishes identically
    CHECK((tp[1] - QPoly(2) * tp[0] * tm[0] + tm[1]).is_zero());
}

TEST_CASE("multilinear solve")
{
    auto t2 = logderiv_tower(TowerBase::F2, 2);
    auto id = solve_multilinear(t2[0], {t2[0]});
    CHECK(id.coeffs[0] == QPoly(1));

    QPoly c1 = s * s * tau - R(3, 7), c2 = tau + s;
    auto two = solve_multilinear(c1 * t2[0] + c2 * t2[1], {t2[0], t2[1]});
    CHECK(two.coeffs[0] == c1);
    CHECK(two.coeffs[1] == c2);

    QPoly perturbed = t2[0] + pow(q, 3);
    CHECK(status_of([&] { solve_multilinear(perturbed, {t2[0], t2[1]}); }) == Status::infeasible);
    CHECK(status_of([&] { solve_multilinear(pow(s, 10) * t2[0], {t2[0]}, 3); }) == Status::degree_bound);
    CHECK(solve_multilinear(pow(s, 5) * t2[0], {t2[0]}, 3).degree_used == 6);
    CHECK(status_of([&] { solve_multilinear(t2[0], {t2[0], QPoly(2) * t2[0]}); }) == Status::non_unique);
}

TEST_CASE("j = 1 transfer")
{
    auto sys = j1_system({s, QPoly(1)});
    std::vector<QPoly> all = sys.basis;
    all.push_back(sys.target);
    std::set<std::pair<int, int>> expect{{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}, {8, 0},
                                         {0, 1}, {0, 2}, {0, 4}, {1, 2}, {2, 2}, {4, 2}};
    CHECK(qp_support(all) == expect);

    std::vector<std::vector<QPoly>> rows = {
        {R(1, 5) * (QPoly(1) - QPoly(2) * tau) * s * s, R(1, 10) * (tau - 3)},
        {R(-3, 2) + s, pow(s, 3) * tau},
        {QPoly(0), QPoly(0)},
    };
    for (const auto& row : rows) {
        auto out = transfer_j1(row);
        CHECK(out[0] == row[0]);
        CHECK(out[1] == QPoly(2) * row[1]);
    }
    // perturbing one monomial coefficient of the system breaks solvability
    auto bad = j1_system(rows[0]);
    bad.target += pow(q, 5);
    CHECK(status_of([&] { solve_multilinear(bad.target, bad.basis, 3); }) == Status::infeasible);
}

TEST_CASE("j = 2 transfer")
{
    std::vector<QPoly> z1{QPoly(0), QPoly(0)}, z2(4, QPoly(0));
    auto zero = transfer_j2(z1, z2);
    CHECK(zero[0] == R(-1, 4));
    for (int k = 1; k < 4; ++k) CHECK(zero[k].is_zero());

    auto c = transfer_j2({QPoly(0), R(3, 5)}, z2);
    CHECK(c[3] == QPoly(-2) * R(9, 25));

    QPoly lin = R(2, 3) * s - tau;
    auto l = transfer_j2({lin, QPoly(0)}, z2);
    CHECK(l[0] == R(-1, 4));
    CHECK(l[1] == R(-1, 2) * lin * lin);
    CHECK(l[2].is_zero());

    QPoly a11 = s * s, a12 = s * s * s, b1 = tau, b2 = s, b3 = QPoly(1), b4 = s * tau;
    auto g = transfer_j2({a11, a12}, {b1, b2, b3, b4});
    CHECK(g[0] == b1 + QPoly(2) * b4 - QPoly(1) + a12 - R(1, 4));
    CHECK(g[1] == QPoly(2) * b2 - R(1, 2) * a11 * a11 - QPoly(6) * s);
    CHECK(g[2] == QPoly(4) * b3 - QPoly(2) * a11 * a12);
    CHECK(g[3] == QPoly(8) * b4 - QPoly(2) * a12 * a12);
    CHECK_THROWS_AS(transfer_j2({a11}, {b1, b2, b3, b4}), Error);
}

TEST_CASE("coefficient table")
{
    CoefficientTable t;
    CHECK_THROWS_AS(t.set(2, 1, 3, s, Provenance::DerivedNumeric), Error);
    CHECK_THROWS_AS(t.set(3, 1, 1, s, Provenance::DerivedNumeric), Error);
    CHECK_THROWS_AS(t.set(2, 1, 1, q, Provenance::DerivedNumeric), Error);
    t.set(2, 1, 1, R(1, 5) * s * s, Provenance::DerivedNumeric);
    t.set(2, 1, 2, R(-3, 10), Provenance::DerivedNumeric);
    CHECK(t.max_order(2) == 1);
    apply_transfers(t);
    CHECK(t.at(1, 1, 2).poly == R(-3, 5));
    CHECK(t.at(4, 1, 1).provenance == Provenance::PaperRelation);
    CHECK(t.duality_holds());
    t.set(4, 1, 1, s, Provenance::Ingested);
    CHECK_FALSE(t.duality_holds());
    CHECK_THROWS_AS(t.at(2, 2, 1), Error);
    CHECK(provenance_from(provenance_name(Provenance::Ingested)) == Provenance::Ingested);
}
