#pragma once

#include "core/ensemble.hpp"
#include "fredholm/jet.hpp"

#include <vector>

namespace softedge {

struct GramOptions {
    // Rows whose mass on (x, inf) is below drop_mass are left out of the block.
    double drop_mass = 1e-26;
    bool full_block = false;
    // bound on the neglected mass beyond the upper quadrature limit
    double tail_tolerance = 1e-12;
    int nodes_per_panel = 20;
};

// A_jk(x) = int_x^inf phi_j phi_k for the indices lo <= j, k < n carrying mass.
struct GramCache {
    EnsembleSpec spec;
    double x = 0;
    int lo = 0;
    int nodes = 0;
    std::vector<long double> gram;        // (n - lo)^2, row major
    std::vector<long double> eigenvalues; // descending
    long double trace = 0;                // sum over all n diagonal entries
    double tail_mass = 0;

    int block() const { return spec.n - lo; }
    long double entry(int j, int k) const; // global indices, zero outside the block
};

GramCache gram(const EnsembleSpec& spec, double x, const GramOptions& opt = {});

// prod_i (1 - xi lambda_i) about xi_star, to order J.
XiJet E2n_jet(const GramCache& cache, double xi_star, int J);
double E2n(const EnsembleSpec& spec, double x, double xi);

// P(exactly k levels in (x, inf)), k = 0 .. n.
std::vector<double> gap_probabilities(const GramCache& cache);

// P(at most k levels exceed x); pre: 0 <= k <= n-1.
double kth_largest_finite_cdf(const EnsembleSpec& spec, int k, double x);

} // namespace softedge
