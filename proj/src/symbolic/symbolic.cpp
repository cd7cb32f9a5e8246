#include "symbolic/symbolic.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <random>

namespace softedge {

QPoly pii_derive(const QPoly& poly)
{
    const QPoly p = QPoly::var(QPoly::P);
    const QPoly pp = QPoly::var(QPoly::S) * QPoly::var(QPoly::Q) + QPoly(2) * QPoly::var(QPoly::Q, 3);
    QPoly r;
    for (const auto& [e, c] : poly.terms()) {
        if (e[QPoly::S]) r += QPoly::monomial({e[0] - 1, e[1], e[2], e[3]}, c * e[QPoly::S]);
        if (e[QPoly::Q]) r += mpq_class(c * e[QPoly::Q]) * (QPoly::monomial({e[0], e[1], e[2] - 1, e[3]}, 1) * p);
        if (e[QPoly::P]) r += mpq_class(c * e[QPoly::P]) * (QPoly::monomial({e[0], e[1], e[2], e[3] - 1}, 1) * pp);
    }
    return r;
}

std::vector<QPoly> logderiv_tower(TowerBase base, int kmax)
{
    require(kmax >= 1 && kmax <= 10, Status::invalid_argument, "logderiv_tower: kmax must lie in 1..10");
    const QPoly s = QPoly::var(QPoly::S), q = QPoly::var(QPoly::Q), p = QPoly::var(QPoly::P);
    QPoly u00 = p * p - s * q * q - pow(q, 4);
    QPoly r1;
    switch (base) {
    case TowerBase::F2: r1 = u00; break;
    case TowerBase::Fplus: r1 = QPoly::rational(1, 2) * (u00 + q); break;
    case TowerBase::Fminus: r1 = QPoly::rational(1, 2) * (u00 - q); break;
    }
    std::vector<QPoly> out{r1};
    for (int k = 1; k < kmax; ++k) out.push_back(pii_derive(out.back()) + r1 * out.back());
    return out;
}

namespace {

using Row = std::vector<mpq_class>;

// Reduced row echelon form of [A | b]; returns pivot columns, or nullopt if inconsistent.
std::optional<std::vector<int>> rref(std::vector<Row>& M, int ncols)
{
    std::vector<int> pivots;
    size_t r = 0;
    for (int c = 0; c < ncols && r < M.size(); ++c) {
        size_t piv = r;
        while (piv < M.size() && M[piv][c] == 0) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[r], M[piv]);
        mpq_class inv = 1 / M[r][c];
        for (auto& v : M[r]) v *= inv;
        for (size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][c] == 0) continue;
            mpq_class f = M[i][c];
            for (int k = c; k <= ncols; ++k) M[i][k] -= f * M[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    for (size_t i = r; i < M.size(); ++i)
        if (M[i][ncols] != 0) return std::nullopt;
    return pivots;
}

struct Attempt {
    bool consistent;
    bool unique;
    std::vector<QPoly> coeffs;
};

Attempt attempt(const QPoly& target, const std::vector<QPoly>& basis, int D)
{
    // unknowns: coefficient of s^a tau^b in c_k, a + b <= D
    std::vector<std::tuple<int, int, int>> unknowns;
    for (size_t k = 0; k < basis.size(); ++k)
        for (int a = 0; a <= D; ++a)
            for (int b = 0; a + b <= D; ++b) unknowns.emplace_back(int(k), a, b);
    const int n = int(unknowns.size());
    std::map<QPoly::Exp, int> row_of;
    std::vector<Row> M;
    auto row_index = [&](const QPoly::Exp& e) {
        auto it = row_of.find(e);
        if (it != row_of.end()) return it->second;
        row_of.emplace(e, int(M.size()));
        M.emplace_back(n + 1, mpq_class(0));
        return int(M.size()) - 1;
    };
    for (int u = 0; u < n; ++u) {
        auto [k, a, b] = unknowns[u];
        for (const auto& [e, c] : basis[k].terms()) {
            QPoly::Exp f{e[0] + a, e[1] + b, e[2], e[3]};
            M[row_index(f)][u] += c;
        }
    }
    for (const auto& [e, c] : target.terms()) M[row_index(e)][n] += c;
    auto piv = rref(M, n);
    if (!piv) return {false, false, {}};
    Attempt out{true, int(piv->size()) == n, std::vector<QPoly>(basis.size())};
    for (size_t r = 0; r < piv->size(); ++r) {
        auto [k, a, b] = unknowns[(*piv)[r]];
        out.coeffs[k] += QPoly::monomial({a, b, 0, 0}, M[r][n]);
    }
    return out;
}

// Consistency of the (q, p)-coefficient system after substituting rationals for s, tau.
bool consistent_at(const QPoly& target, const std::vector<QPoly>& basis, const mpq_class& s, const mpq_class& tau)
{
    QPoly t = target.specialize(s, tau);
    std::vector<QPoly> b;
    for (const auto& x : basis) b.push_back(x.specialize(s, tau));
    return attempt(t, b, 0).consistent;
}

} // namespace

MultilinearSolution solve_multilinear(const QPoly& target, const std::vector<QPoly>& basis, int degree_bound)
{
    require(!basis.empty(), Status::invalid_argument, "solve_multilinear: empty basis");
    require(degree_bound >= 0, Status::invalid_argument, "solve_multilinear: negative degree bound");
    for (int D : {degree_bound, 2 * degree_bound}) {
        Attempt a = attempt(target, basis, D);
        if (!a.consistent) continue;
        if (!a.unique) fail(Status::non_unique, "solve_multilinear: solution not unique");
        return {a.coeffs, D};
    }
    std::mt19937 rng(20240607u);
    std::uniform_int_distribution<long> num(-997, 997), den(1, 991);
    for (int trial = 0; trial < 3; ++trial) {
        mpq_class s(num(rng), den(rng)), tau(num(rng), den(rng));
        s.canonicalize();
        tau.canonicalize();
        if (consistent_at(target, basis, s, tau))
            fail(Status::degree_bound, "solve_multilinear: no solution of degree <= " +
                                           std::to_string(2 * degree_bound) + " but the system is consistent");
    }
    fail(Status::infeasible, "solve_multilinear: overdetermined system has no solution");
}

J1System j1_system(const std::vector<QPoly>& p2)
{
    require(p2.size() == 2, Status::invalid_argument, "j1_system: need P_{2,1,1}, P_{2,1,2}");
    for (const auto& x : p2) require(x.is_s_tau(), Status::invalid_argument, "j1_system: inputs must lie in Q[s, tau]");
    auto t2 = logderiv_tower(TowerBase::F2, 2);
    auto tp = logderiv_tower(TowerBase::Fplus, 2);
    auto tm = logderiv_tower(TowerBase::Fminus, 2);
    // G_{2,1} = F+ G_{-,1} + G_{+,1} F- + (F+ F-'' - 2 F+' F-' + F+'' F-)/2, divided by F2 = F+ F-
    QPoly inhom = QPoly::rational(1, 2) * (tm[1] - QPoly(2) * tp[0] * tm[0] + tp[1]);
    return {p2[0] * t2[0] + p2[1] * t2[1] - inhom, {tp[0], tp[1], tm[0], tm[1]}};
}

std::vector<QPoly> transfer_j1(const std::vector<QPoly>& p2)
{
    J1System sys = j1_system(p2);
    MultilinearSolution sol = solve_multilinear(sys.target, sys.basis, 3);
    if (sol.coeffs[0] != sol.coeffs[2] || sol.coeffs[1] != sol.coeffs[3])
        fail(Status::internal, "transfer_j1: solution depends on the sign index");
    return {sol.coeffs[0], sol.coeffs[1]};
}

std::vector<QPoly> transfer_j2(const std::vector<QPoly>& r1, const std::vector<QPoly>& r2)
{
    require(r1.size() == 2 && r2.size() == 4, Status::invalid_argument,
            "transfer_j2: need P_{2,1,1..2} and P_{2,2,1..4}");
    const QPoly half = QPoly::rational(1, 2);
    const QPoly& a11 = r1[0];
    const QPoly& a12 = r1[1];
    return {
        r2[0] + QPoly(2) * r2[3] - half * a11.ds().ds() + a12 - QPoly::rational(1, 4),
        QPoly(2) * r2[1] - half * a11 * a11 - a12.ds().ds(),
        QPoly(4) * r2[2] - QPoly(2) * a11 * a12,
        QPoly(8) * r2[3] - QPoly(2) * a12 * a12,
    };
}

std::string provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::PaperRelation: return "paper-relation";
    case Provenance::DerivedNumeric: return "derived-numeric";
    case Provenance::Ingested: return "ingested";
    }
    return "?";
}

Provenance provenance_from(const std::string& name)
{
    if (name == "paper-relation") return Provenance::PaperRelation;
    if (name == "derived-numeric") return Provenance::DerivedNumeric;
    if (name == "ingested") return Provenance::Ingested;
    fail(Status::invalid_argument, "unknown provenance '" + name + "'");
}

void CoefficientTable::set(int beta, int j, int k, const QPoly& poly, Provenance prov, const std::string& certificate)
{
    require(beta == 1 || beta == 2 || beta == 4, Status::invalid_argument, "CoefficientTable: beta must be 1, 2 or 4");
    require(j >= 1 && k >= 1 && k <= 2 * j, Status::invalid_argument, "CoefficientTable: need 1 <= k <= 2j");
    require(poly.is_s_tau(), Status::invalid_argument, "CoefficientTable: entries must lie in Q[s, tau]");
    e_[{beta, j, k}] = {poly, prov, certificate};
}

bool CoefficientTable::has(int beta, int j, int k) const { return e_.count({beta, j, k}) > 0; }

const TableEntry& CoefficientTable::at(int beta, int j, int k) const
{
    auto it = e_.find({beta, j, k});
    if (it == e_.end())
        fail(Status::out_of_range, "coefficient table has no entry (" + std::to_string(beta) + "," + std::to_string(j) +
                                       "," + std::to_string(k) + ")");
    return it->second;
}

bool CoefficientTable::has_row(int beta, int j) const
{
    for (int k = 1; k <= 2 * j; ++k)
        if (!has(beta, j, k)) return false;
    return true;
}

std::vector<QPoly> CoefficientTable::row(int beta, int j) const
{
    std::vector<QPoly> out;
    for (int k = 1; k <= 2 * j; ++k) out.push_back(at(beta, j, k).poly);
    return out;
}

int CoefficientTable::max_order(int beta) const
{
    int j = 0;
    while (has_row(beta, j + 1)) ++j;
    return j;
}

bool CoefficientTable::duality_holds() const
{
    for (const auto& [key, entry] : e_) {
        auto [beta, j, k] = key;
        if (beta != 1) continue;
        auto it = e_.find({4, j, k});
        if (it != e_.end() && it->second.poly != entry.poly) return false;
    }
    return true;
}

void apply_transfers(CoefficientTable& table)
{
    if (!table.has_row(2, 1)) return;
    auto p1 = transfer_j1(table.row(2, 1));
    for (int b : {1, 4})
        for (int k = 1; k <= 2; ++k) table.set(b, 1, k, p1[k - 1], Provenance::PaperRelation, "transfer_j1");
    if (!table.has_row(2, 2)) return;
    auto p2 = transfer_j2(table.row(2, 1), table.row(2, 2));
    for (int b : {1, 4})
        for (int k = 1; k <= 4; ++k) table.set(b, 2, k, p2[k - 1], Provenance::PaperRelation, "transfer_j2");
}

} // namespace softedge
