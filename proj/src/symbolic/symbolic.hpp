#pragma once

#include "symbolic/qpoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace softedge {

// d/ds with s' = 1, tau' = 0, q' = p, p' = s q + 2 q^3.
QPoly pii_derive(const QPoly& poly);

enum class TowerBase { F2, Fplus, Fminus };

// r_1, ..., r_kmax with r_k = F^(k) / F; pre: 1 <= kmax <= 10.
std::vector<QPoly> logderiv_tower(TowerBase base, int kmax);

struct MultilinearSolution {
    std::vector<QPoly> coeffs; // in Q[s, tau]
    int degree_used = 0;
};

// target = sum_k c_k basis_k with c_k in Q[s, tau] of total degree <= bound
// (bound doubled once on failure).  Throws Status::infeasible when no
// rational-function solution exists, Status::degree_bound when one exists
// beyond the doubled bound, Status::non_unique when the solution has free
// parameters.
MultilinearSolution solve_multilinear(const QPoly& target, const std::vector<QPoly>& basis, int degree_bound = 3);

// j = 1: {P_{2,1,1}, P_{2,1,2}} -> {P_{1,1,1}, P_{1,1,2}} by the 13-monomial solve.
std::vector<QPoly> transfer_j1(const std::vector<QPoly>& p2_row1);

// The 13 x 4 system behind transfer_j1: target and the basis [r1(F+), r2(F+), r1(F-), r2(F-)].
struct J1System {
    QPoly target;
    std::vector<QPoly> basis;
};
J1System j1_system(const std::vector<QPoly>& p2_row1);

// j = 2: closed-form relations; inputs {P_{2,1,1..2}}, {P_{2,2,1..4}}.
std::vector<QPoly> transfer_j2(const std::vector<QPoly>& p2_row1, const std::vector<QPoly>& p2_row2);

enum class Provenance { PaperRelation, DerivedNumeric, Ingested };
std::string provenance_name(Provenance p);
Provenance provenance_from(const std::string& name);

struct TableEntry {
    QPoly poly;
    Provenance provenance = Provenance::DerivedNumeric;
    // post-rounding fit residual as recorded by the producer, free text
    std::string certificate;
};

// P_{beta, j, k} in Q[s, tau], 1 <= k <= 2j.
class CoefficientTable {
public:
    using Key = std::tuple<int, int, int>;

    void set(int beta, int j, int k, const QPoly& poly, Provenance prov, const std::string& certificate = "");
    bool has(int beta, int j, int k) const;
    const TableEntry& at(int beta, int j, int k) const;
    // all k for (beta, j) present
    bool has_row(int beta, int j) const;
    std::vector<QPoly> row(int beta, int j) const;
    int max_order(int beta) const;
    const std::map<Key, TableEntry>& entries() const { return e_; }
    // entry(1, j, k) == entry(4, j, k) wherever both exist
    bool duality_holds() const;

    std::string source;
    std::string commit;

private:
    std::map<Key, TableEntry> e_;
};

// Fill beta = 1 and 4 rows for j = 1, 2 from the beta = 2 rows present.
void apply_transfers(CoefficientTable& table);

} // namespace softedge
