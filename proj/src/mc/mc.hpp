#pragma once

#include "core/ensemble.hpp"
#include "expansion/table_io.hpp"
#include "mc/philox.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace softedge {

struct SampleBatch {
    EnsembleSpec spec;
    std::uint64_t seed = 0;
    int count = 0;
    int workers = 1;
    std::vector<double> levels; // count x n, each draw ascending

    const double* draw(int i) const { return levels.data() + size_t(i) * spec.n; }
    // the r-th largest level of draw i, r = 1 is the largest
    double from_top(int i, int r) const { return draw(i)[spec.n - r]; }
};

// Draws are split into `workers` contiguous chunks, chunk w drawn from
// Philox stream (seed, w); workers <= 0 picks default_workers().
SampleBatch sample(const EnsembleSpec& spec, int count, std::uint64_t seed, int workers = 0);

// Levels of one draw with the given generator stream (tridiagonal / bidiagonal models).
std::vector<double> sample_levels(const EnsembleSpec& spec, Philox& rng);

struct KSResult {
    double statistic = 0;
    double p_value = 1;
    size_t n1 = 0, n2 = 0;
};

// Kolmogorov limiting tail P(K > x)
double kolmogorov_tail(double x);
// c / sqrt(n) critical value of the one-sample test (c = 1.628 at 1%, 1.358 at 5%)
double ks_critical(double alpha, size_t n);

KSResult ks_one_sample(std::vector<double> data, const std::function<double(double)>& cdf);
KSResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct CheckItem {
    std::string name;
    double statistic = 0;
    double p_value = 1;
    bool pass = true;
};

struct CheckReport {
    std::vector<CheckItem> items;
    bool pass() const;
};

// even(OE_n u OE_{n+1}) vs GUE_n and even(OE_{2n+1}) vs GSE_n on the
// largest and second-largest levels (two-sample KS, pass at p > 0.01).
CheckReport superposition_decimation_check(int n, int count, std::uint64_t seed, int workers = 0);

struct ThinningRow {
    double x = 0, empirical = 0, reference = 0, std_error = 0;
};

struct ThinningReport {
    std::vector<ThinningRow> rows;
    double max_z = 0; // max |empirical - reference| / std_error
    std::string reference_kind; // "exact" (beta 2) or "expansion m=2"
};

// P(no kept level above x) with each level kept independently with probability xi.
ThinningReport thinning_check(const EnsembleSpec& spec, double xi, const std::vector<double>& x_grid, int count,
                              std::uint64_t seed, int workers = 0,
                              const CoefficientTable& table = default_table());

struct Figure1Report {
    int rank = 1; // k-th largest level, 1 = largest
    std::vector<double> edges;  // bin edges in s
    std::vector<double> hist;   // empirical density per bin
    std::vector<double> noise;  // standard error per bin
    // model[m][b]: bin-averaged expansion density through order m
    std::vector<std::vector<double>> model;
    std::vector<double> distance; // L-infinity per m
    double noise_floor = 0;       // max_b noise
    bool monotone = false;        // each step m -> m+1 improves by more than 2 noise floors
    ScalingParams frame;
};

// Histogram of (x_(n-rank+1) - mu_n') / sigma_n' against the expansion
// densities m = 0..m_max (Freedman-Diaconis bins, no clipping).
Figure1Report figure1_harness(const EnsembleSpec& spec, int rank, int m_max, int count, std::uint64_t seed,
                              int workers = 0, const CoefficientTable& table = default_table());

// beta = 2 variant: the histogram is replaced by bin averages of the exact
// finite-n density on bins of the given width over [s_lo, s_hi]; noise = 0.
Figure1Report figure1_exact(const EnsembleSpec& spec, int rank, int m_max, double s_lo, double s_hi, double width,
                            const CoefficientTable& table = default_table());

// Exports.  Binary: "SEMC" magic, u32 version, i32 family, beta, n, f64 p,
// u64 seed, i32 count, workers, then count*n f64 little-endian.
void write_csv(const SampleBatch& batch, const std::string& path);
void write_binary(const SampleBatch& batch, const std::string& path);
SampleBatch read_binary(const std::string& path);

} // namespace softedge
