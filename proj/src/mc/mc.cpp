#include "mc/mc.hpp"

#include "core/parallel.hpp"
#include "expansion/expansion.hpp"
#include "finiten/finiten.hpp"
#include "mc/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

namespace softedge {

namespace {

double chi(Philox& rng, double dof)
{
    std::gamma_distribution<double> g(0.5 * dof, 2.0);
    return std::sqrt(g(rng));
}

} // namespace

std::vector<double> sample_levels(const EnsembleSpec& spec, Philox& rng)
{
    const int n = spec.n;
    const double beta = spec.beta;
    std::vector<double> diag(n), sub(std::max(n - 1, 0));
    if (spec.family == Family::Gaussian) {
        // density |Delta|^beta exp(-sum l^2 / 2) for the levels of this matrix
        std::normal_distribution<double> N(0.0, 1.0);
        for (int i = 0; i < n; ++i) diag[i] = N(rng);
        for (int i = 0; i + 1 < n; ++i) sub[i] = chi(rng, beta * (n - 1 - i)) / std::sqrt(2.0);
        auto lv = tridiagonal_eigenvalues(std::move(diag), std::move(sub));
        // weight exp(-c x^2): c = 1/2 keeps l, c = 1 maps x = l / sqrt 2
        if (spec.beta != 1)
            for (auto& x : lv) x /= std::sqrt(2.0);
        return lv;
    }
    // lower bidiagonal B: d_i = chi_{beta (p - i)}, e_i = chi_{beta (n - 1 - i)};
    // B B^T has density |Delta|^beta prod l^alpha exp(-sum l / 2)
    std::vector<double> d(n), e(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) d[i] = chi(rng, beta * (spec.p - i));
    for (int i = 0; i + 1 < n; ++i) e[i] = chi(rng, beta * (n - 1 - i));
    for (int i = 0; i < n; ++i) diag[i] = d[i] * d[i] + (i > 0 ? e[i - 1] * e[i - 1] : 0.0);
    for (int i = 0; i + 1 < n; ++i) sub[i] = e[i] * d[i];
    auto lv = tridiagonal_eigenvalues(std::move(diag), std::move(sub));
    // weight exp(-c x): c = 1/2 keeps l, c = 1 maps x = l / 2
    if (spec.beta != 1)
        for (auto& x : lv) x *= 0.5;
    return lv;
}

SampleBatch sample(const EnsembleSpec& spec, int count, std::uint64_t seed, int workers)
{
    validate(spec);
    require(count >= 1, Status::invalid_argument, "sample count must be positive");
    if (workers <= 0) workers = default_workers();
    SampleBatch b;
    b.spec = spec;
    b.seed = seed;
    b.count = count;
    b.workers = workers;
    b.levels.resize(size_t(count) * spec.n);
    parallel_for(
        workers,
        [&](int w) {
            Philox rng(seed, std::uint64_t(w));
            int lo = int((long long)count * w / workers), hi = int((long long)count * (w + 1) / workers);
            for (int i = lo; i < hi; ++i) {
                auto lv = sample_levels(spec, rng);
                std::copy(lv.begin(), lv.end(), b.levels.begin() + size_t(i) * spec.n);
            }
        },
        workers);
    return b;
}

double kolmogorov_tail(double x)
{
    if (x <= 0) return 1.0;
    if (x < 0.27) return 1.0;
    double sum = 0;
    for (int k = 1; k <= 100; ++k) {
        double t = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 ? 2.0 : -2.0) * t;
        if (t < 1e-17) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double ks_critical(double alpha, size_t n)
{
    require(alpha > 0 && alpha < 1 && n > 0, Status::invalid_argument, "ks_critical: bad arguments");
    // invert kolmogorov_tail by bisection
    double lo = 0.3, hi = 5.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (kolmogorov_tail(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) / std::sqrt(double(n));
}

static double ks_p(double D, double n_eff)
{
    double r = std::sqrt(n_eff);
    return kolmogorov_tail((r + 0.12 + 0.11 / r) * D);
}

KSResult ks_one_sample(std::vector<double> data, const std::function<double(double)>& cdf)
{
    KSResult r;
    r.n1 = data.size();
    if (data.empty()) return r;
    std::sort(data.begin(), data.end());
    const double n = double(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
        double F = cdf(data[i]);
        r.statistic = std::max({r.statistic, (i + 1) / n - F, F - i / n});
    }
    r.p_value = ks_p(r.statistic, n);
    return r;
}

KSResult ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    KSResult r;
    r.n1 = a.size();
    r.n2 = b.size();
    if (a.empty() || b.empty()) return r;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    const double na = double(a.size()), nb = double(b.size());
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        r.statistic = std::max(r.statistic, std::fabs(i / na - j / nb));
    }
    r.p_value = ks_p(r.statistic, na * nb / (na + nb));
    return r;
}

bool CheckReport::pass() const
{
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

CheckReport superposition_decimation_check(int n, int count, std::uint64_t seed, int workers)
{
    require(n >= 2, Status::invalid_argument, "decimation check needs n >= 2");
    CheckReport rep;
    if (count <= 0) return rep;
    auto G = [](int beta, int dim) { return EnsembleSpec{Family::Gaussian, beta, dim, 0.0}; };
    // independent streams: distinct seeds per batch
    SampleBatch oa = sample(G(1, n), count, seed, workers);
    SampleBatch ob = sample(G(1, n + 1), count, seed + 1, workers);
    SampleBatch ue = sample(G(2, n), count, seed + 2, workers);
    SampleBatch oc = sample(G(1, 2 * n + 1), count, seed + 3, workers);
    SampleBatch se = sample(G(4, n), count, seed + 4, workers);

    // even(.) keeps x_(2), x_(4), ..., so its r-th largest is the (2r)-th largest of
    // the 2n+1 merged levels
    std::vector<std::vector<double>> ue_dec(2), se_dec(2), ue_ref(2), se_ref(2);
    std::vector<double> merged(2 * n + 1);
    for (int i = 0; i < count; ++i) {
        std::merge(oa.draw(i), oa.draw(i) + n, ob.draw(i), ob.draw(i) + n + 1, merged.begin());
        for (int r = 1; r <= 2; ++r) {
            ue_dec[r - 1].push_back(merged[2 * n + 1 - 2 * r]);
            se_dec[r - 1].push_back(oc.from_top(i, 2 * r));
            ue_ref[r - 1].push_back(ue.from_top(i, r));
            se_ref[r - 1].push_back(se.from_top(i, r));
        }
    }
    const char* label[2] = {"largest", "2nd largest"};
    for (int r = 0; r < 2; ++r) {
        auto ks = ks_two_sample(ue_dec[r], ue_ref[r]);
        rep.items.push_back({"even(OE_" + std::to_string(n) + " u OE_" + std::to_string(n + 1) + ") vs UE_" +
                                 std::to_string(n) + " " + label[r],
                             ks.statistic, ks.p_value, ks.p_value > 0.01});
    }
    for (int r = 0; r < 2; ++r) {
        auto ks = ks_two_sample(se_dec[r], se_ref[r]);
        rep.items.push_back({"even(OE_" + std::to_string(2 * n + 1) + ") vs SE_" + std::to_string(n) + " " + label[r],
                             ks.statistic, ks.p_value, ks.p_value > 0.01});
    }
    return rep;
}

ThinningReport thinning_check(const EnsembleSpec& spec, double xi, const std::vector<double>& x_grid, int count,
                              std::uint64_t seed, int workers, const CoefficientTable& table)
{
    validate(spec);
    require(xi > 0 && xi <= 1, Status::invalid_argument, "thinning needs 0 < xi <= 1");
    require(count >= 1, Status::invalid_argument, "thinning needs count >= 1");
    SampleBatch b = sample(spec, count, seed, workers);
    // thinning coins from a stream separate from the sampling streams
    Philox coin(seed ^ 0x9E3779B97F4A7C15ull, 0);
    std::bernoulli_distribution keep(xi);
    std::vector<double> thinned_max(count);
    for (int i = 0; i < count; ++i) {
        double m = -INFINITY;
        for (int l = 0; l < spec.n; ++l)
            if (keep(coin)) m = std::max(m, b.draw(i)[l]);
        thinned_max[i] = m;
    }
    std::sort(thinned_max.begin(), thinned_max.end());

    ThinningReport rep;
    ScalingParams fr = expansion_frame(spec);
    rep.reference_kind = spec.beta == 2 ? "exact" : "expansion m=2";
    for (double x : x_grid) {
        ThinningRow row;
        row.x = x;
        row.empirical = double(std::upper_bound(thinned_max.begin(), thinned_max.end(), x) - thinned_max.begin()) / count;
        if (spec.beta == 2) {
            row.reference = E2n(spec, x, xi);
        } else {
            ExpansionRequest req{spec, (x - fr.mu) / fr.sigma, InducedOp::generating(xi), 2};
            row.reference = evaluate(req, table).value;
        }
        row.std_error = std::sqrt(std::max(row.reference * (1 - row.reference), 0.0) / count);
        if (row.std_error > 0) rep.max_z = std::max(rep.max_z, std::fabs(row.empirical - row.reference) / row.std_error);
        else if (row.empirical != row.reference) rep.max_z = INFINITY;
        rep.rows.push_back(row);
    }
    return rep;
}

namespace {

void finish_figure1(Figure1Report& rep, const EnsembleSpec& spec, int m_max, const CoefficientTable& table)
{
    ExpansionGrid g = evaluate_grid(spec, InducedOp::kth_largest(rep.rank - 1), m_max, rep.edges, table);
    const size_t B = rep.edges.size() - 1;
    rep.model.assign(m_max + 1, std::vector<double>(B));
    rep.distance.assign(m_max + 1, 0.0);
    for (int m = 0; m <= m_max; ++m)
        for (size_t b = 0; b < B; ++b) {
            double w = rep.edges[b + 1] - rep.edges[b];
            rep.model[m][b] = (g.value[m][b + 1] - g.value[m][b]) / w;
            rep.distance[m] = std::max(rep.distance[m], std::fabs(rep.hist[b] - rep.model[m][b]));
        }
    rep.noise_floor = rep.noise.empty() ? 0 : *std::max_element(rep.noise.begin(), rep.noise.end());
    rep.monotone = true;
    for (int m = 0; m < m_max; ++m)
        if (!(rep.distance[m] - rep.distance[m + 1] > 2 * rep.noise_floor)) rep.monotone = false;
}

} // namespace

Figure1Report figure1_harness(const EnsembleSpec& spec, int rank, int m_max, int count, std::uint64_t seed,
                              int workers, const CoefficientTable& table)
{
    validate(spec);
    require(rank >= 1 && rank <= spec.n, Status::invalid_argument, "rank must lie in 1..n");
    require(count >= 100, Status::invalid_argument, "figure1 harness needs at least 100 draws");
    for (int j = 1; j <= m_max; ++j)
        require(table.has_row(spec.beta, j), Status::invalid_argument,
                "coefficient table lacks order " + std::to_string(j) + " for beta " + std::to_string(spec.beta));
    Figure1Report rep;
    rep.rank = rank;
    rep.frame = expansion_frame(spec);
    SampleBatch b = sample(spec, count, seed, workers);
    std::vector<double> s(count);
    for (int i = 0; i < count; ++i) s[i] = (b.from_top(i, rank) - rep.frame.mu) / rep.frame.sigma;
    std::sort(s.begin(), s.end());

    auto quant = [&](double q) { return s[size_t(q * (count - 1))]; };
    double width = 2 * (quant(0.75) - quant(0.25)) / std::cbrt(double(count));
    require(width > 0, Status::internal, "degenerate sample spread");
    // bins cover the sample range inside the working window
    double lo = std::max(s.front(), kWindowLo + 0.5), hi = std::min(s.back(), kWindowHi - 0.5);
    int B = std::max(1, int(std::ceil((hi - lo) / width)));
    for (int i = 0; i <= B; ++i) rep.edges.push_back(lo + i * width);
    rep.hist.assign(B, 0.0);
    rep.noise.assign(B, 0.0);
    for (int i = 0; i < B; ++i) {
        auto c = double(std::lower_bound(s.begin(), s.end(), rep.edges[i + 1]) -
                        std::lower_bound(s.begin(), s.end(), rep.edges[i]));
        rep.hist[i] = c / (count * width);
        rep.noise[i] = std::sqrt(std::max(c, 1.0)) / (count * width);
    }
    finish_figure1(rep, spec, m_max, table);
    return rep;
}

Figure1Report figure1_exact(const EnsembleSpec& spec, int rank, int m_max, double s_lo, double s_hi, double width,
                            const CoefficientTable& table)
{
    validate(spec);
    require(spec.beta == 2, Status::invalid_argument, "exact figure1 variant needs beta = 2");
    require(rank >= 1 && rank <= spec.n, Status::invalid_argument, "rank must lie in 1..n");
    require(s_hi > s_lo && width > 0, Status::invalid_argument, "bad bin layout");
    Figure1Report rep;
    rep.rank = rank;
    rep.frame = expansion_frame(spec);
    int B = int(std::ceil((s_hi - s_lo) / width - 1e-9));
    for (int i = 0; i <= B; ++i) rep.edges.push_back(s_lo + i * width);
    std::vector<double> cdf(B + 1);
    for (int i = 0; i <= B; ++i)
        cdf[i] = kth_largest_finite_cdf(spec, rank - 1, rep.frame.mu + rep.frame.sigma * rep.edges[i]);
    for (int i = 0; i < B; ++i) rep.hist.push_back((cdf[i + 1] - cdf[i]) / width);
    rep.noise.assign(B, 0.0);
    finish_figure1(rep, spec, m_max, table);
    return rep;
}

void write_csv(const SampleBatch& batch, const std::string& path)
{
    std::ofstream out(path);
    require(bool(out), Status::io, "cannot write '" + path + "'");
    out << "# family=" << family_name(batch.spec.family) << " beta=" << batch.spec.beta << " n=" << batch.spec.n
        << " p=" << batch.spec.p << " seed=" << batch.seed << " count=" << batch.count << " workers=" << batch.workers
        << "\n";
    out.precision(17);
    for (int i = 0; i < batch.count; ++i) {
        for (int l = 0; l < batch.spec.n; ++l) out << (l ? "," : "") << batch.draw(i)[l];
        out << "\n";
    }
    require(bool(out), Status::io, "write failed for '" + path + "'");
}

namespace {
constexpr char kMagic[4] = {'S', 'E', 'M', 'C'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& o, const T& v)
{
    o.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
void get(std::ifstream& in, T& v)
{
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    require(bool(in), Status::io, "truncated sample file");
}
} // namespace

void write_binary(const SampleBatch& batch, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    require(bool(out), Status::io, "cannot write '" + path + "'");
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, std::int32_t(batch.spec.family == Family::Gaussian ? 0 : 1));
    put(out, std::int32_t(batch.spec.beta));
    put(out, std::int32_t(batch.spec.n));
    put(out, batch.spec.p);
    put(out, std::uint64_t(batch.seed));
    put(out, std::int32_t(batch.count));
    put(out, std::int32_t(batch.workers));
    out.write(reinterpret_cast<const char*>(batch.levels.data()), std::streamsize(batch.levels.size() * sizeof(double)));
    require(bool(out), Status::io, "write failed for '" + path + "'");
}

SampleBatch read_binary(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    require(bool(in), Status::io, "cannot open '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    require(bool(in) && std::memcmp(magic, kMagic, 4) == 0, Status::io, "not a sample file: '" + path + "'");
    std::uint32_t version;
    get(in, version);
    require(version == kVersion, Status::io, "unsupported sample file version");
    std::int32_t fam, beta, n, count, workers;
    std::uint64_t seed;
    SampleBatch b;
    get(in, fam);
    get(in, beta);
    get(in, n);
    get(in, b.spec.p);
    get(in, seed);
    get(in, count);
    get(in, workers);
    b.spec.family = fam == 0 ? Family::Gaussian : Family::Laguerre;
    b.spec.beta = beta;
    b.spec.n = n;
    validate(b.spec);
    require(count >= 0, Status::io, "bad count in sample file");
    b.seed = seed;
    b.count = count;
    b.workers = workers;
    b.levels.resize(size_t(count) * n);
    in.read(reinterpret_cast<char*>(b.levels.data()), std::streamsize(b.levels.size() * sizeof(double)));
    require(bool(in), Status::io, "truncated sample file");
    return b;
}

} // namespace softedge
