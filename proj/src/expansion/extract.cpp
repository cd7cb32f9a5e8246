#include "expansion/extract.hpp"

#include "core/parallel.hpp"
#include "expansion/rational.hpp"
#include "expansion/table_io.hpp"
#include "finiten/finiten.hpp"
#include "fredholm/limit.hpp"
#include "painleve/painleve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>

namespace softedge {

std::vector<int> geometric_ladder(int first, int steps)
{
    require(first >= 1 && steps >= 1, Status::invalid_argument, "geometric_ladder: bad arguments");
    std::vector<int> ns;
    for (int i = 0; i < steps; ++i) ns.push_back(int(std::lround(first * std::pow(2.0, i / 2.0))));
    return ns;
}

namespace {

long double eval_sqp(const QPoly& poly, double s, double q, double p)
{
    long double acc = 0;
    for (const auto& [e, c] : poly.terms())
        acc += (long double)c.get_d() * std::pow((long double)s, e[QPoly::S]) * std::pow((long double)q, e[QPoly::Q]) *
               std::pow((long double)p, e[QPoly::P]);
    return acc;
}

EnsembleSpec ladder_spec(const LadderSpec& l, int n)
{
    EnsembleSpec spec{l.family, 2, n, 0.0};
    if (l.family == Family::Laguerre) spec.p = l.ratio * n;
    return spec;
}

} // namespace

LadderSamples sample_ladder(const LadderSpec& ladder, const std::vector<double>& s_grid, const std::vector<double>& xis,
                            int kmax, int workers)
{
    require(!ladder.ns.empty() && !s_grid.empty() && !xis.empty(), Status::invalid_argument, "sample_ladder: empty input");
    require(kmax >= 0 && kmax <= 10, Status::invalid_argument, "sample_ladder: kmax out of range");
    if (ladder.family == Family::Laguerre) require(ladder.ratio >= 1, Status::invalid_argument, "sample_ladder: ratio < 1");
    for (double s : s_grid) check_window(s);

    LadderSamples out;
    out.ladder = ladder;
    out.s = s_grid;
    out.xis = xis;
    out.tau = ladder.family == Family::Gaussian ? 0.0 : tau_of_ratio(ladder.ratio);
    const size_t A = ladder.ns.size(), S = s_grid.size(), X = xis.size();

    out.F.assign(X, std::vector<std::vector<double>>(S, std::vector<double>(kmax + 1)));
    std::vector<QPoly> tower = kmax > 0 ? logderiv_tower(TowerBase::F2, kmax) : std::vector<QPoly>{};
    for (size_t x = 0; x < X; ++x) {
        require(xis[x] > 0 && xis[x] <= 1, Status::invalid_argument, "sample_ladder: xi must lie in (0, 1]");
        PIISolution sol = solve_q(xis[x]);
        for (size_t i = 0; i < S; ++i) {
            double s = s_grid[i];
            double F = limit_F(2, s, xis[x]);
            double q = sol.q_at(s), p = sol.qp_at(s);
            out.F[x][i][0] = F;
            for (int k = 1; k <= kmax; ++k) out.F[x][i][k] = double(F * eval_sqp(tower[k - 1], s, q, p));
        }
    }

    out.h.resize(A);
    out.D.assign(X, std::vector<std::vector<double>>(A, std::vector<double>(S)));
    // one task per (n, s); the largest n first so the tail of the queue is cheap
    std::vector<std::pair<size_t, size_t>> tasks;
    for (size_t a = A; a-- > 0;)
        for (size_t i = 0; i < S; ++i) tasks.push_back({a, i});
    for (size_t a = 0; a < A; ++a) out.h[a] = plain_frame(ladder_spec(ladder, ladder.ns[a])).h;
    parallel_for(
        int(tasks.size()),
        [&](int t) {
            auto [a, i] = tasks[t];
            EnsembleSpec spec = ladder_spec(ladder, ladder.ns[a]);
            ScalingParams sc = plain_frame(spec);
            GramCache g = gram(spec, sc.mu + sc.sigma * s_grid[i]);
            for (size_t x = 0; x < X; ++x) out.D[x][a][i] = E2n_jet(g, xis[x], 0).value() - out.F[x][i][0];
        },
        workers);
    return out;
}

std::vector<std::vector<double>> extract_corrections(const LadderSamples& samples, int xi_index,
                                                     const std::vector<std::vector<double>>& known, int count,
                                                     int fit_terms)
{
    const size_t A = samples.h.size(), S = samples.s.size();
    require(xi_index >= 0 && size_t(xi_index) < samples.xis.size(), Status::invalid_argument,
            "extract_corrections: xi index out of range");
    require(count >= 1 && fit_terms >= count, Status::invalid_argument, "extract_corrections: need fit_terms >= count");
    require(A >= size_t(fit_terms) + 2, Status::invalid_argument,
            "extract_corrections: ladder too short for the requested order (" + std::to_string(A) + " rungs, " +
                std::to_string(fit_terms) + " terms)");
    for (const auto& g : known) require(g.size() == S, Status::invalid_argument, "extract_corrections: known curve size");
    const int j0 = int(known.size());

    Eigen::MatrixXd V(A, fit_terms);
    for (size_t a = 0; a < A; ++a)
        for (int c = 0; c < fit_terms; ++c) V(a, c) = std::pow(samples.h[a], c);
    auto qr = V.colPivHouseholderQr();

    std::vector<std::vector<double>> G(count, std::vector<double>(S));
    Eigen::VectorXd r(A);
    for (size_t i = 0; i < S; ++i) {
        for (size_t a = 0; a < A; ++a) {
            double h = samples.h[a];
            long double v = samples.D[xi_index][a][i];
            for (int l = 0; l < j0; ++l) v -= std::pow((long double)h, l + 1) * known[l][i];
            r(a) = double(v / std::pow((long double)h, j0 + 1));
        }
        Eigen::VectorXd c = qr.solve(r);
        for (int l = 0; l < count; ++l) G[l][i] = c(l);
    }
    return G;
}

std::vector<BasisTerm> graded_basis(int j)
{
    require(j >= 1, Status::invalid_argument, "graded_basis: j >= 1");
    std::vector<BasisTerm> b;
    for (int k = 1; k <= 2 * j; ++k)
        for (int d = 0; d + 2 * k <= 4 * j; ++d)
            if (((d - k - j) % 3 + 3) % 3 == 0) b.push_back({k, d});
    return b;
}

std::vector<double> assemble(const std::vector<QPoly>& row, double tau, const std::vector<double>& s,
                             const std::vector<std::vector<double>>& F)
{
    std::vector<double> G(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        long double acc = 0;
        for (size_t k = 1; k <= row.size(); ++k) {
            require(F[i].size() > k, Status::invalid_argument, "assemble: derivative order missing");
            acc += (long double)eval_st(row[k - 1], s[i], tau) * F[i][k];
        }
        G[i] = double(acc);
    }
    return G;
}

Reconstruction reconstruct_polynomials(const std::vector<CorrectionCurve>& curves, int j, const RoundingOptions& opt)
{
    require(!curves.empty(), Status::invalid_argument, "reconstruct_polynomials: no curves");
    Reconstruction rec;
    rec.basis = graded_basis(j);
    const size_t B = rec.basis.size();

    for (const auto& c : curves) {
        const size_t S = c.s.size();
        require(S > B && c.G.size() == S && c.F.size() == S, Status::invalid_argument,
                "reconstruct_polynomials: curve shape");
        Eigen::MatrixXd M(S, B);
        Eigen::VectorXd g(S);
        for (size_t i = 0; i < S; ++i) {
            for (size_t b = 0; b < B; ++b) M(i, b) = std::pow(c.s[i], rec.basis[b].d) * c.F[i].at(rec.basis[b].k);
            g(i) = c.G[i];
        }
        Eigen::VectorXd scale = M.colwise().norm().transpose();
        for (size_t b = 0; b < B; ++b) M.col(b) /= scale(b);
        Eigen::VectorXd x = M.colPivHouseholderQr().solve(g);
        rec.raw_residual = std::max(rec.raw_residual, (M * x - g).cwiseAbs().maxCoeff());
        std::vector<double> raw(B);
        for (size_t b = 0; b < B; ++b) raw[b] = x(b) / scale(b);
        rec.raw.push_back(raw);
        rec.taus.push_back(c.tau);
    }

    std::vector<double> distinct = rec.taus;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int m = int(distinct.size());
    // keep at least one spare tau value so the fit is a check, not an interpolation
    const int max_deg = m == 1 ? 0 : std::min(3 * j, m - 2);

    // tau-degree per term: lowest degree whose unrounded fit explains the per-curve values
    rec.tau_degree.assign(B, max_deg);
    for (size_t b = 0; b < B; ++b)
        for (int e = 0; e <= max_deg; ++e) {
            Eigen::MatrixXd V(curves.size(), e + 1);
            Eigen::VectorXd y(curves.size());
            for (size_t c = 0; c < curves.size(); ++c) {
                for (int l = 0; l <= e; ++l) V(c, l) = std::pow(rec.taus[c], l);
                y(c) = rec.raw[c][b];
            }
            Eigen::VectorXd t = V.colPivHouseholderQr().solve(y);
            if ((V * t - y).cwiseAbs().maxCoeff() <= opt.degree_tolerance) {
                rec.tau_degree[b] = e;
                break;
            }
        }

    // Joint fit over every curve with unknowns c[b][l] (coefficient of tau^l s^d F^(k)).
    // The best-determined free unknown is rounded and frozen, the rest refit.
    struct Unknown {
        size_t b;
        int l;
    };
    std::vector<Unknown> unk;
    for (size_t b = 0; b < B; ++b)
        for (int l = 0; l <= rec.tau_degree[b]; ++l) unk.push_back({b, l});
    size_t rows = 0;
    for (const auto& c : curves) rows += c.s.size();
    Eigen::MatrixXd A(rows, unk.size());
    Eigen::VectorXd g(rows);
    {
        size_t r = 0;
        for (const auto& c : curves)
            for (size_t i = 0; i < c.s.size(); ++i, ++r) {
                for (size_t u = 0; u < unk.size(); ++u) {
                    const auto& bt = rec.basis[unk[u].b];
                    A(r, u) = std::pow(c.tau, unk[u].l) * std::pow(c.s[i], bt.d) * c.F[i].at(bt.k);
                }
                g(r) = c.G[i];
            }
    }
    std::vector<std::optional<mpq_class>> fixed(unk.size());
    bool all = true;
    for (size_t step = 0; step < unk.size() && all; ++step) {
        std::vector<size_t> freeu;
        Eigen::VectorXd y = g;
        for (size_t u = 0; u < unk.size(); ++u) {
            if (fixed[u]) y -= A.col(u) * fixed[u]->get_d();
            else freeu.push_back(u);
        }
        Eigen::MatrixXd Af(rows, freeu.size());
        for (size_t f = 0; f < freeu.size(); ++f) Af.col(f) = A.col(freeu[f]);
        Eigen::VectorXd scale = Af.colwise().norm().transpose();
        for (size_t f = 0; f < freeu.size(); ++f) Af.col(f) /= scale(f);
        Eigen::VectorXd x = Af.colPivHouseholderQr().solve(y);
        const double dof = std::max<double>(1.0, double(rows) - double(freeu.size()));
        const double sigma2 = (Af * x - y).squaredNorm() / dof;
        Eigen::MatrixXd cov = (Af.transpose() * Af).inverse() * sigma2;
        size_t pick = 0;
        double best = INFINITY;
        for (size_t f = 0; f < freeu.size(); ++f) {
            double se = std::sqrt(std::max(0.0, cov(f, f))) / scale(f);
            if (se < best) best = se, pick = f;
        }
        double value = x(pick) / scale(pick);
        auto q = simplest_rational(value, std::max(opt.tolerance, 4 * best), opt.max_denominator);
        if (!q) all = false;
        else fixed[freeu[pick]] = *q;
    }

    rec.row.assign(2 * j, QPoly());
    if (all)
        for (size_t u = 0; u < unk.size(); ++u) {
            const auto& bt = rec.basis[unk[u].b];
            rec.row[bt.k - 1] += QPoly::monomial({bt.d, unk[u].l, 0, 0}, *fixed[u]);
        }

    for (const auto& c : curves) {
        std::vector<double> G = assemble(rec.row, c.tau, c.s, c.F);
        for (size_t i = 0; i < G.size(); ++i) rec.certificate = std::max(rec.certificate, std::fabs(G[i] - c.G[i]));
    }
    rec.rounded = all && rec.certificate <= opt.residual_tolerance;
    return rec;
}

} // namespace softedge
