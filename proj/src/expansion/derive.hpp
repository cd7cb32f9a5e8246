#pragma once

#include "expansion/extract.hpp"

#include <functional>
#include <string>
#include <vector>

namespace softedge {

struct DeriveOptions {
    bool gaussian = true;
    std::vector<double> ratios{1, 4, 9, 16, 25}; // Laguerre p / n
    int ladder_first = 100;
    int ladder_steps = 13;
    std::vector<double> s_grid; // empty: -5 : 0.25 : 2
    std::vector<double> xis{1.0, 0.5};
    int j_max = 2;
    // terms of the h-polynomial fitted at order 1; one fewer per later order
    int fit_terms = 6;
    RoundingOptions rounding;
    int workers = 0;
    std::function<void(const std::string&)> log;
};

struct DeriveReport {
    CoefficientTable table; // beta = 2 rows derived, beta = 1, 4 by transfer
    // rec[x][j-1]: reconstruction of order j from the extraction at xis[x]
    std::vector<std::vector<Reconstruction>> rec;
    bool xi_consistent = false; // all xi give identical rounded rows
    bool rounded = false;
    std::vector<double> taus;
};

std::vector<double> default_extraction_grid();

// Reconstruction at each xi from already sampled ladders.
DeriveReport derive_from_samples(const std::vector<LadderSamples>& ladders, int j_max, int fit_terms,
                                 const RoundingOptions& rounding);

// Sample the ladders, reconstruct, transfer.
DeriveReport derive_table(const DeriveOptions& opt);

} // namespace softedge
