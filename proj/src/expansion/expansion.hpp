#pragma once

#include "core/ensemble.hpp"
#include "expansion/table_io.hpp"
#include "fredholm/limit.hpp"

#include <vector>

namespace softedge {

struct ExpansionRequest {
    EnsembleSpec spec;
    double s = 0;
    InducedOp op = InducedOp::generating(1.0);
    int m = 0;
};

struct ExpansionValue {
    double value = 0;
    // orders[0] = F, orders[j] = h^j G_j for j = 1..m
    std::vector<double> orders;
    ScalingParams frame;
};

// F + sum_{j<=m} h^j sum_k P_{beta,j,k}(s, tau) F^(k)(s) at the n' frame.
ExpansionValue evaluate(const ExpansionRequest& req, const CoefficientTable& table = default_table());

struct ExpansionGrid {
    std::vector<double> s;
    ScalingParams frame;
    // partial sums through order m' = 0..m: value[m'][i], density[m'][i] = d/ds value
    std::vector<std::vector<double>> value, density;
    int fit_degree = 0;
};

// Whole-grid route: one Chebyshev fit of the induced limit over the grid's span.
ExpansionGrid evaluate_grid(const EnsembleSpec& spec, const InducedOp& op, int m, const std::vector<double>& s_grid,
                            const CoefficientTable& table = default_table());

} // namespace softedge
