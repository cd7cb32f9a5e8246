#pragma once

#include "core/ensemble.hpp"
#include "symbolic/symbolic.hpp"

#include <vector>

namespace softedge {

// beta = 2 ensembles along n with p = ratio * n (tau fixed); ratio ignored for Gaussian.
struct LadderSpec {
    Family family = Family::Gaussian;
    double ratio = 1.0;
    std::vector<int> ns;
};

// n_i = round(first * 2^(i/2)), i < steps
std::vector<int> geometric_ladder(int first, int steps);

struct LadderSamples {
    LadderSpec ladder;
    double tau = 0;
    std::vector<double> s, xis, h;
    // D[x][a][i] = E_{2,n_a}(mu + sigma s_i; xi_x) - F_2(s_i; xi_x)
    std::vector<std::vector<std::vector<double>>> D;
    // F[x][i][k] = d^k/ds^k F_2(s_i; xi_x), k <= kmax (Painleve tower)
    std::vector<std::vector<std::vector<double>>> F;
};

// One Gram matrix per (n, s) serves every xi.
LadderSamples sample_ladder(const LadderSpec& ladder, const std::vector<double>& s_grid, const std::vector<double>& xis,
                            int kmax = 4, int workers = 0);

// Given G_1..G_{j0} on the s-grid (known.size() = j0), fits
// (D - sum_i h^i G_i) / h^{j0+1} as a polynomial in h with fit_terms terms and
// returns the leading `count` coefficients: G_{j0+1}, ..., G_{j0+count}.
std::vector<std::vector<double>> extract_corrections(const LadderSamples& samples, int xi_index,
                                                     const std::vector<std::vector<double>>& known, int count,
                                                     int fit_terms = 4);

// Basis monomials s^d F^(k) of order j: 1 <= k <= 2j, d == j + k (mod 3), d + 2k <= 4j.
struct BasisTerm {
    int k, d;
};
std::vector<BasisTerm> graded_basis(int j);

// G(s_i) as sum_k P_k(s_i, tau) F[i][k] for a row P_1..P_2j.
std::vector<double> assemble(const std::vector<QPoly>& row, double tau, const std::vector<double>& s,
                             const std::vector<std::vector<double>>& F);

struct CorrectionCurve {
    double tau = 0;
    std::vector<double> s;
    std::vector<double> G;
    std::vector<std::vector<double>> F;
};

struct RoundingOptions {
    // smallest rounding window for a fitted coefficient (widened to 4 standard errors)
    double tolerance = 1e-6;
    long max_denominator = 2000;
    // per-curve coefficients must lie on a tau-polynomial of the chosen degree within this
    double degree_tolerance = 2e-5;
    // accepted post-rounding residual, max over all curves and s
    double residual_tolerance = 1e-5;
};

struct Reconstruction {
    std::vector<QPoly> row; // P_{2,j,1..2j}
    double certificate = 0; // post-rounding residual
    double raw_residual = 0; // least-squares residual before rounding
    bool rounded = false;
    std::vector<BasisTerm> basis;
    std::vector<double> taus;
    std::vector<std::vector<double>> raw; // raw[c][b]: coefficient of basis b fitted on curve c
    std::vector<int> tau_degree;          // per basis term
};

// Least squares on the graded basis per curve picks a tau-degree per term;
// a joint fit over all curves is then rounded one coefficient at a time.
// rounded = false when a coefficient has no simple rational in its window or
// the rounded row misses the curves by more than residual_tolerance.
Reconstruction reconstruct_polynomials(const std::vector<CorrectionCurve>& curves, int j,
                                       const RoundingOptions& opt = {});

} // namespace softedge
