#include "finiten/finiten.hpp"

#include "airy/wave.hpp"
#include "core/error.hpp"
#include "fredholm/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace softedge {

namespace {

struct Interval {
    double lo, hi;
};

WaveFunctionFamily family_of(const EnsembleSpec& spec)
{
    WaveFunctionFamily f;
    f.kind = spec.family == Family::Gaussian ? WaveKind::Hermite : WaveKind::Laguerre;
    f.alpha = spec.family == Family::Laguerre ? alpha_of(spec) : 0.0;
    f.max_degree = spec.n - 1;
    return f;
}

// local wavenumber of phi_{n-1}; zero beyond the turning point
double wavenumber(const EnsembleSpec& spec, double alpha, double t)
{
    const double n = spec.n;
    if (spec.family == Family::Gaussian) return std::sqrt(std::max(2 * n - 1 - t * t, 0.0));
    double nu = 2 * n - 1 + alpha;
    return std::sqrt(std::max(nu / t - 0.25 - (alpha * alpha - 1) / (4 * t * t), 0.0));
}

std::vector<Interval> panels(const EnsembleSpec& spec, double alpha, double a, double b, double sigma)
{
    std::vector<Interval> out;
    double t = a;
    const double two_pi = 2 * std::numbers::pi;
    while (t < b) {
        if (spec.family == Family::Laguerre && t == 0) {
            // graded panels towards the x^alpha endpoint
            double e = std::min({1e-6, sigma, b});
            out.push_back({0.0, e});
            t = e;
            continue;
        }
        double k = wavenumber(spec, alpha, t);
        double w = k > 0 ? std::min(two_pi / k, sigma) : sigma;
        if (spec.family == Family::Laguerre) w = std::min(w, t);
        // look ahead: the wavenumber grows towards the bulk
        double k2 = wavenumber(spec, alpha, std::min(t + w, b));
        if (k2 > 0) w = std::min(w, two_pi / k2);
        double e = std::min(t + w, b);
        if (b - e < 1e-3 * w) e = b;
        out.push_back({t, e});
        t = e;
    }
    return out;
}

} // namespace

long double GramCache::entry(int j, int k) const
{
    if (j < lo || k < lo) return 0;
    const int m = block();
    return gram[size_t(j - lo) * m + (k - lo)];
}

GramCache gram(const EnsembleSpec& spec, double x, const GramOptions& opt)
{
    validate(spec);
    require(spec.beta == 2, Status::invalid_argument, "gram: finite-n values are exact for beta = 2 only");
    require(std::isfinite(x), Status::invalid_argument, "gram: x must be finite");
    require(opt.nodes_per_panel >= 4 && opt.nodes_per_panel <= 60, Status::invalid_argument, "gram: bad panel order");
    const int n = spec.n;
    const WaveFunctionFamily fam = family_of(spec);
    const ScalingParams sc = plain_frame(spec);

    GramCache c;
    c.spec = spec;
    c.x = x;
    // beyond mu + 16 sigma the edge functions carry less than exp(-80)
    const double upper = sc.mu + 16 * sc.sigma + 2.0;
    double lower = x;
    if (spec.family == Family::Gaussian)
        lower = std::max(x, -upper);
    else
        lower = std::max(x, 0.0);
    if (lower >= upper) {
        c.lo = opt.full_block ? 0 : n;
        c.gram.assign(size_t(c.block()) * c.block(), 0.0L);
        c.eigenvalues.assign(c.block(), 0.0L);
        return c;
    }

    auto pan = panels(spec, fam.alpha, lower, upper, sc.sigma);
    const auto& gl = gauss_legendre<long double>(opt.nodes_per_panel);
    std::vector<long double> xs, ws;
    for (const auto& p : pan) {
        long double mid = ((long double)p.lo + p.hi) / 2, half = ((long double)p.hi - p.lo) / 2;
        for (size_t i = 0; i < gl.x.size(); ++i) {
            xs.push_back(mid + half * gl.x[i]);
            ws.push_back(half * gl.w[i]);
        }
    }
    const int Q = int(xs.size());
    c.nodes = Q;

    // pass 1: diagonal masses for all degrees
    std::vector<long double> phi(n), mass(n, 0.0L);
    for (int i = 0; i < Q; ++i) {
        wave_block<long double>(fam, xs[i], 0, n - 1, phi.data());
        for (int j = 0; j < n; ++j) mass[j] += ws[i] * phi[j] * phi[j];
    }
    int lo = 0;
    if (!opt.full_block) {
        lo = n;
        for (int j = 0; j < n; ++j)
            if (mass[j] > opt.drop_mass) {
                lo = j;
                break;
            }
    }
    c.lo = lo;
    for (int j = 0; j < n; ++j) c.trace += mass[j];

    // tail beyond the upper limit, from the top function's decay
    {
        long double top;
        wave_block<long double>(fam, (long double)upper, n - 1, n - 1, &top);
        c.tail_mass = double(top * top * sc.sigma);
        if (c.tail_mass > opt.tail_tolerance)
            fail(Status::not_converged, "gram: tail mass beyond the quadrature cutoff exceeds tolerance");
    }

    const int m = n - lo;
    c.gram.assign(size_t(m) * m, 0.0L);
    if (m == 0) return c;
    std::vector<long double> blk(m);
    for (int i = 0; i < Q; ++i) {
        wave_block<long double>(fam, xs[i], lo, n - 1, blk.data());
        for (int j = 0; j < m; ++j) {
            long double wj = ws[i] * blk[j];
            long double* row = &c.gram[size_t(j) * m];
            for (int k = j; k < m; ++k) row[k] += wj * blk[k];
        }
    }
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < j; ++k) c.gram[size_t(j) * m + k] = c.gram[size_t(k) * m + j];

    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    LMat A = Eigen::Map<LMat>(c.gram.data(), m, m);
    Eigen::SelfAdjointEigenSolver<LMat> es(A, Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, Status::not_converged, "gram: eigenvalue solver failed");
    c.eigenvalues.resize(m);
    for (int i = 0; i < m; ++i) c.eigenvalues[i] = es.eigenvalues()[m - 1 - i];
    return c;
}

XiJet E2n_jet(const GramCache& cache, double xi_star, int J)
{
    require(J >= 0, Status::invalid_argument, "E2n_jet: negative order");
    XiJet out = XiJet::constant(xi_star, J, 1.0);
    for (long double lam : cache.eigenvalues) {
        XiJet f(xi_star, J);
        f[0] = double(1.0L - (long double)xi_star * lam);
        if (J >= 1) f[1] = double(-lam);
        out *= f;
    }
    return out;
}

double E2n(const EnsembleSpec& spec, double x, double xi)
{
    return E2n_jet(gram(spec, x), xi, 0).value();
}

std::vector<double> gap_probabilities(const GramCache& cache)
{
    const int n = cache.spec.n;
    XiJet j = E2n_jet(cache, 1.0, n);
    std::vector<double> out(n + 1);
    for (int k = 0; k <= n; ++k) out[k] = (k % 2 ? -1.0 : 1.0) * j[k];
    return out;
}

double kth_largest_finite_cdf(const EnsembleSpec& spec, int k, double x)
{
    require(k >= 0 && k <= spec.n - 1, Status::out_of_range, "kth_largest_finite_cdf: need 0 <= k <= n-1");
    XiJet j = E2n_jet(gram(spec, x), 1.0, k);
    double acc = 0;
    for (int r = 0; r <= k; ++r) acc += (r % 2 ? -1.0 : 1.0) * j[r];
    return acc;
}

} // namespace softedge
