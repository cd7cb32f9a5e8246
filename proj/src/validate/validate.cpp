#include "validate/validate.hpp"

#include "expansion/derive.hpp"
#include "expansion/expansion.hpp"
#include "finiten/finiten.hpp"
#include "fredholm/chebyshev.hpp"
#include "fredholm/limit.hpp"
#include "mc/mc.hpp"
#include "painleve/painleve.hpp"
#include "symbolic/symbolic.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

namespace softedge {

namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::vector<double> grid(double a, double b, double step)
{
    std::vector<double> g;
    for (int i = 0; a + i * step <= b + 1e-9; ++i) g.push_back(a + i * step);
    return g;
}

double slope(const std::vector<double>& h, const std::vector<double>& err)
{
    double n = double(h.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const QPoly S = QPoly::var(QPoly::S), Q = QPoly::var(QPoly::Q), P = QPoly::var(QPoly::P), T = QPoly::var(QPoly::Tau);
QPoly R(long a, long b) { return QPoly::rational(a, b); }

CriterionResult c1_symbolic()
{
    CriterionResult r;
    std::vector<std::string> bad;
    auto f2 = logderiv_tower(TowerBase::F2, 2);
    QPoly f2_second = QPoly(-2) * pow(Q, 4) * P * P - QPoly(2) * S * Q * Q * P * P + pow(P, 4) + S * S * pow(Q, 4) +
                      pow(Q, 8) + QPoly(2) * S * pow(Q, 6) - Q * Q;
    if (!(f2[0] == P * P - S * Q * Q - pow(Q, 4))) bad.push_back("F2 r1");
    if (!(f2[1] == f2_second)) bad.push_back("F2 r2");
    for (int sign : {+1, -1}) {
        QPoly sg(sign);
        auto t = logderiv_tower(sign > 0 ? TowerBase::Fplus : TowerBase::Fminus, 2);
        QPoly first = R(1, 2) * P * P - R(1, 2) * pow(Q, 4) - R(1, 2) * S * Q * Q + sg * R(1, 2) * Q;
        QPoly second = R(-1, 2) * pow(Q, 4) * P * P - R(1, 2) * S * Q * Q * P * P + sg * R(1, 2) * Q * P * P +
                       R(1, 4) * pow(P, 4) + sg * R(1, 2) * P + R(1, 4) * S * S * pow(Q, 4) + R(1, 4) * pow(Q, 8) +
                       R(1, 2) * S * pow(Q, 6) - sg * R(1, 2) * pow(Q, 5) - sg * R(1, 2) * S * pow(Q, 3) -
                       R(1, 4) * Q * Q;
        if (!(t[0] == first)) bad.push_back(sign > 0 ? "F+ r1" : "F- r1");
        if (!(t[1] == second)) bad.push_back(sign > 0 ? "F+ r2" : "F- r2");
    }
    // generic rows in Q[s, tau]
    std::vector<QPoly> row1 = {R(3, 7) * S * S - R(1, 3) * T * S + R(2, 5), R(-5, 4) + T * S};
    std::vector<QPoly> row2 = {R(1, 9) * S * S * S - T, R(2, 3) * S + T * pow(S, 4), R(-7, 5) * S * S * T,
                               R(4, 11) + T * T};
    auto t1 = transfer_j1(row1);
    if (!(t1[0] == row1[0] && t1[1] == QPoly(2) * row1[1])) bad.push_back("transfer_j1");
    auto t2 = transfer_j2(row1, row2);
    auto d2 = [](const QPoly& x) { return x.ds().ds(); };
    std::vector<QPoly> expect = {
        row2[0] + QPoly(2) * row2[3] - R(1, 2) * d2(row1[0]) + row1[1] - R(1, 4),
        QPoly(2) * row2[1] - R(1, 2) * row1[0] * row1[0] - d2(row1[1]),
        QPoly(4) * row2[2] - QPoly(2) * row1[0] * row1[1],
        QPoly(8) * row2[3] - QPoly(2) * row1[1] * row1[1],
    };
    for (int k = 0; k < 4; ++k)
        if (!(t2[k] == expect[k])) bad.push_back("transfer_j2 P" + std::to_string(k + 1));
    auto t0 = transfer_j2({QPoly(), QPoly()}, {QPoly(), QPoly(), QPoly(), QPoly()});
    if (!(t0[0] == R(-1, 4) && t0[1].is_zero() && t0[2].is_zero() && t0[3].is_zero())) bad.push_back("zero row -1/4");
    r.pass = bad.empty();
    if (r.pass) {
        r.detail = "towers, transfer_j1 and transfer_j2 identities exact";
    } else {
        r.detail = "mismatch:";
        for (auto& b : bad) r.detail += " " + b;
    }
    return r;
}

CriterionResult c2_total()
{
    CriterionResult r;
    r.pass = true;
    double worst = 0;
    for (double xi : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        TotalIntegral t = total_integral(xi);
        double e = std::fabs(t.value - t.reference);
        worst = std::max(worst, e);
        if (!(e < 1e-6)) r.pass = false;
    }
    r.detail = fmt("max |int q - artanh sqrt xi| = %.2e (tol 1e-6)", worst);
    return r;
}

CriterionResult c3_cross()
{
    CriterionResult r;
    double e_det = 0, e_prod = 0;
    for (double xi : {0.5, 1.0})
        for (double s : grid(-6, 4, 0.25)) {
            double f2 = limit_F(2, s, xi);
            e_det = std::max(e_det, std::fabs(f2 - F_via_painleve(PTarget::F2, s, xi)));
            e_prod = std::max(e_prod, std::fabs(F_pm(+1, s, xi) * F_pm(-1, s, xi) - f2));
        }
    r.pass = e_det < 1e-7 && e_prod < 1e-8;
    r.detail = fmt("|F2 det - F2 PII| = %.2e (tol 1e-7), |F+F- - F2| = %.2e (tol 1e-8)", e_det, e_prod);
    return r;
}

CriterionResult c4_logderiv()
{
    CriterionResult r;
    double worst = 0;
    for (double xi : {0.5, 1.0}) {
        PIISolution sol = solve_q(xi);
        SDerivOptions o;
        o.lo = kWindowLo;
        o.hi = kWindowHi;
        o.noise = 1e-15;
        // log F2 is resolved only to ~1e-10 near s = -8, keep the window short
        o.width = 2;
        o.degree = 24;
        for (double s : grid(-5, 3, 0.25)) {
            auto d = s_derivatives([&](double x) { return std::log(limit_F(2, x, xi)); }, s, 1, o);
            double q = sol.q_at(s), p = sol.qp_at(s);
            worst = std::max(worst, std::fabs(d[1] - (p * p - s * q * q - q * q * q * q)));
        }
    }
    r.pass = worst < 1e-6;
    r.detail = fmt("max |(log F2)' - (q'^2 - s q^2 - q^4)| = %.2e (tol 1e-6)", worst);
    return r;
}

// sup over s of |E_{2,n} - expansion through order m| along the ladder, per m
std::vector<std::vector<double>> convergence_errors(const EnsembleSpec& base, double ratio, const std::vector<int>& ns,
                                                    double xi, const CoefficientTable& table, std::vector<double>& hs)
{
    auto s_grid = grid(-5, 2, 0.25);
    std::vector<std::vector<double>> F(s_grid.size());
    PIISolution sol = solve_q(xi);
    auto tower = logderiv_tower(TowerBase::F2, 4);
    for (size_t i = 0; i < s_grid.size(); ++i) {
        double s = s_grid[i], f = limit_F(2, s, xi);
        F[i].push_back(f);
        for (auto& t : tower) {
            long double v = 0;
            for (const auto& [e, c] : t.terms())
                v += (long double)c.get_d() * std::pow((long double)s, e[QPoly::S]) *
                     std::pow((long double)sol.q_at(s), e[QPoly::Q]) * std::pow((long double)sol.qp_at(s), e[QPoly::P]);
            F[i].push_back(double(f * v));
        }
    }
    std::vector<std::vector<double>> err(3, std::vector<double>(ns.size(), 0.0));
    hs.clear();
    for (size_t a = 0; a < ns.size(); ++a) {
        EnsembleSpec spec = base;
        spec.n = ns[a];
        if (spec.family == Family::Laguerre) spec.p = ratio * ns[a];
        ScalingParams fr = expansion_frame(spec);
        hs.push_back(fr.h);
        auto G1 = assemble(table.row(2, 1), fr.tau, s_grid, F);
        auto G2 = assemble(table.row(2, 2), fr.tau, s_grid, F);
        for (size_t i = 0; i < s_grid.size(); ++i) {
            GramCache g = gram(spec, fr.mu + fr.sigma * s_grid[i]);
            double d = E2n_jet(g, xi, 0).value() - F[i][0];
            err[0][a] = std::max(err[0][a], std::fabs(d));
            d -= fr.h * G1[i];
            err[1][a] = std::max(err[1][a], std::fabs(d));
            d -= fr.h * fr.h * G2[i];
            err[2][a] = std::max(err[2][a], std::fabs(d));
        }
    }
    return err;
}

CriterionResult c5_convergence(const CoefficientTable& table)
{
    CriterionResult r;
    if (!table.has_row(2, 1) || !table.has_row(2, 2)) {
        r.detail = "coefficient table lacks beta = 2 rows for j = 1, 2";
        return r;
    }
    r.pass = true;
    const std::vector<int> ns{20, 40, 80, 160};
    const double want[3] = {1.0, 2.0, 3.0}, tol[3] = {0.2, 0.2, 0.3};
    std::ostringstream os;
    for (int fam = 0; fam < 2; ++fam) {
        EnsembleSpec base{fam == 0 ? Family::Gaussian : Family::Laguerre, 2, 1, 0.0};
        for (double xi : {1.0, 0.5}) {
            std::vector<double> hs;
            auto err = convergence_errors(base, 2.0, ns, xi, table, hs);
            os << (fam == 0 ? "GUE" : "LUE p=2n") << " xi=" << xi << ":";
            for (int m = 0; m < 3; ++m) {
                double sl = slope(hs, err[m]);
                if (!(std::fabs(sl - want[m]) <= tol[m])) r.pass = false;
                os << fmt(" m=%d slope %.3f", m, sl);
            }
            os << "; ";
        }
    }
    r.detail = os.str();
    return r;
}

CriterionResult c6_xi_independence(const ValidationOptions& opt, const CoefficientTable& table)
{
    CriterionResult r;
    if (!opt.rederive) {
        // certificates recorded in the table
        bool ok = table.has_row(2, 1) && table.has_row(2, 2);
        double worst = 0;
        for (const auto& [key, e] : table.entries()) {
            if (std::get<0>(key) != 2) continue;
            double res = 1;
            bool agree = e.certificate.find("xi_agree=yes") != std::string::npos;
            if (std::sscanf(e.certificate.c_str(), "residual=%lf", &res) != 1 || !agree) ok = false;
            worst = std::max(worst, res);
        }
        r.pass = ok && worst < 1e-5;
        r.detail = fmt("shipped certificates only: max residual %.2e", worst);
        return r;
    }
    DeriveOptions d;
    d.workers = opt.workers;
    DeriveReport rep = derive_table(d);
    double worst = 0;
    for (auto& per_xi : rep.rec)
        for (auto& rec : per_xi) worst = std::max(worst, rec.certificate);
    bool same_as_table = true;
    for (int j = 1; j <= 2; ++j)
        for (int k = 1; k <= 2 * j; ++k)
            if (!table.has(2, j, k) || !(table.at(2, j, k).poly == rep.rec[0][j - 1].row[k - 1])) same_as_table = false;
    r.pass = rep.rounded && rep.xi_consistent && worst < 1e-5;
    r.detail = fmt("xi=1 and xi=0.5 rows %s, all rounded %s, max certificate %.2e (tol 1e-5), shipped table %s",
                   rep.xi_consistent ? "identical" : "DIFFER", rep.rounded ? "yes" : "no", worst,
                   same_as_table ? "reproduced" : "not reproduced");
    return r;
}

CriterionResult c7_erfc()
{
    CriterionResult r;
    double worst = 0;
    EnsembleSpec spec{Family::Gaussian, 2, 1, 0.0};
    for (double x : {-1.0, 0.0, 1.5})
        for (double xi : {0.3, 1.0}) worst = std::max(worst, std::fabs(E2n(spec, x, xi) - (1 - xi * std::erfc(x) / 2)));
    r.pass = worst < 1e-12;
    r.detail = fmt("max |E_{2,1} - (1 - xi erfc(x)/2)| = %.2e (tol 1e-12)", worst);
    return r;
}

CriterionResult c8_mc_exact(const ValidationOptions& opt)
{
    CriterionResult r;
    r.pass = true;
    const int count = 100000;
    std::ostringstream os;
    int idx = 0;
    for (auto spec : {EnsembleSpec{Family::Gaussian, 2, 50, 0.0}, EnsembleSpec{Family::Laguerre, 2, 30, 60.0}}) {
        ScalingParams fr = plain_frame(spec);
        // exact CDF in the scaled variable, resolved by a Chebyshev fit
        const double a = -9, b = 7;
        ChebSeries cdf = ChebSeries::fit(
            [&](double s) { return kth_largest_finite_cdf(spec, 0, fr.mu + fr.sigma * s); }, a, b, 160);
        SampleBatch batch = sample(spec, count, opt.seed + 100 + idx++, opt.workers);
        std::vector<double> s(count);
        for (int i = 0; i < count; ++i) s[i] = (batch.from_top(i, 1) - fr.mu) / fr.sigma;
        auto ks = ks_one_sample(s, [&](double x) { return x <= a ? cdf(a) : x >= b ? cdf(b) : cdf(x); });
        double crit = ks_critical(0.01, count);
        if (!(ks.statistic < crit)) r.pass = false;
        os << (spec.family == Family::Gaussian ? "GUE n=50" : "LUE n=30 p=60")
           << fmt(": D = %.5f (1%% critical %.5f); ", ks.statistic, crit);
    }
    r.detail = os.str();
    return r;
}

CriterionResult c9_decimation(const ValidationOptions& opt)
{
    CriterionResult r;
    r.pass = true;
    std::ostringstream os;
    auto a = superposition_decimation_check(6, 50000, opt.seed + 200, opt.workers);
    auto b = superposition_decimation_check(4, 50000, opt.seed + 300, opt.workers);
    // UE items from n = 6, SE items from n = 4
    for (size_t i = 0; i < 2; ++i) {
        r.pass = r.pass && a.items[i].pass;
        os << a.items[i].name << fmt(" p=%.3f; ", a.items[i].p_value);
    }
    for (size_t i = 2; i < 4; ++i) {
        r.pass = r.pass && b.items[i].pass;
        os << b.items[i].name << fmt(" p=%.3f; ", b.items[i].p_value);
    }
    r.detail = os.str();
    return r;
}

CriterionResult c10_thinning(const ValidationOptions& opt)
{
    CriterionResult r;
    EnsembleSpec spec{Family::Gaussian, 2, 20, 0.0};
    ScalingParams fr = plain_frame(spec);
    std::vector<double> xs;
    for (int i = 0; i < 30; ++i) xs.push_back(fr.mu + fr.sigma * (-4.0 + 6.0 * i / 29));
    auto rep = thinning_check(spec, 0.5, xs, 100000, opt.seed + 400, opt.workers);
    r.pass = rep.max_z < 4;
    r.detail = fmt("max deviation %.2f binomial standard errors over 30 points (limit 4)", rep.max_z);
    return r;
}

CriterionResult c11_figure1(const ValidationOptions& opt, const CoefficientTable& table)
{
    CriterionResult r;
    EnsembleSpec spec{Family::Gaussian, 1, 10, 0.0};
    if (!table.has_row(1, 1) || !table.has_row(1, 2)) {
        r.detail = "coefficient table lacks beta = 1 rows";
        return r;
    }
    auto rep = figure1_harness(spec, 4, 2, 100000, opt.seed + 500, opt.workers, table);
    r.pass = rep.monotone;
    r.detail = fmt("L-inf distance m=0 %.4f, m=1 %.4f, m=2 %.4f; noise floor %.4f (gaps must exceed %.4f)",
                   rep.distance[0], rep.distance[1], rep.distance[2], rep.noise_floor, 2 * rep.noise_floor);
    return r;
}

CriterionResult c12_interlacing(const CoefficientTable& table)
{
    CriterionResult r;
    const int n = 5, k = 1;
    EnsembleSpec se{Family::Gaussian, 4, n, 0.0}, oe{Family::Gaussian, 1, 2 * n + 1, 0.0};
    double worst = 0;
    for (int m = 0; m <= 2; ++m)
        for (double s : {-2.0, 0.0, 2.0}) {
            double a = evaluate({se, s, InducedOp::kth_largest(k), m}, table).value;
            double b = evaluate({oe, s, InducedOp::kth_largest(2 * k + 1), m}, table).value;
            worst = std::max(worst, std::fabs(a - b));
        }
    r.pass = worst < 1e-9;
    r.detail = fmt("max |SE_5 2nd largest - OE_11 4th largest| over m <= 2 = %.2e (tol 1e-9)", worst);
    return r;
}

} // namespace

const char* criterion_name(int id)
{
    static const char* names[kCriteria] = {
        "symbolic exactness",        "total integral of q",        "cross-method limit law",
        "log-derivative identity",   "finite-n convergence order", "xi-independence of coefficients",
        "ground-state closed form",  "Monte Carlo vs exact",       "superposition and decimation",
        "thinning",                  "histogram vs expansion",     "interlacing duality",
    };
    return id >= 1 && id <= kCriteria ? names[id - 1] : "unknown";
}

CriterionResult run_criterion(int id, const ValidationOptions& opt)
{
    const CoefficientTable& table = opt.table ? *opt.table : default_table();
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        switch (id) {
        case 1: r = c1_symbolic(); break;
        case 2: r = c2_total(); break;
        case 3: r = c3_cross(); break;
        case 4: r = c4_logderiv(); break;
        case 5: r = c5_convergence(table); break;
        case 6: r = c6_xi_independence(opt, table); break;
        case 7: r = c7_erfc(); break;
        case 8: r = c8_mc_exact(opt); break;
        case 9: r = c9_decimation(opt); break;
        case 10: r = c10_thinning(opt); break;
        case 11: r = c11_figure1(opt, table); break;
        case 12: r = c12_interlacing(table); break;
        default: r.detail = "no such criterion";
        }
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.id = id;
    r.name = criterion_name(id);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_all(const ValidationOptions& opt)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, opt));
    return out;
}

} // namespace softedge
