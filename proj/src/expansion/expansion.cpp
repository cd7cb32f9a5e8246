#include "expansion/expansion.hpp"

#include "fredholm/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace softedge {

namespace {

void check_request(const EnsembleSpec& spec, const InducedOp& op, int m, const CoefficientTable& table)
{
    validate(spec);
    require(m >= 0, Status::invalid_argument, "correction order m must be nonnegative");
    require(op.xi_star >= 0 && op.xi_star <= 1, Status::out_of_range, "xi* must lie in [0, 1]");
    for (int j = 1; j <= m; ++j)
        require(table.has_row(spec.beta, j), Status::invalid_argument,
                "coefficient table lacks order j = " + std::to_string(j) + " for beta = " + std::to_string(spec.beta));
}

bool trivially_one(const InducedOp& op)
{
    // xi* = 0 with the plain generating function: E = 1 identically
    return op.xi_star == 0 && op.max_order() == 0;
}

} // namespace

ExpansionValue evaluate(const ExpansionRequest& req, const CoefficientTable& table)
{
    check_request(req.spec, req.op, req.m, table);
    check_window(req.s);
    ExpansionValue out;
    out.frame = expansion_frame(req.spec);
    const int kmax = 2 * req.m;
    std::vector<double> F(kmax + 1, 0.0);
    if (trivially_one(req.op)) {
        F[0] = 1;
    } else {
        const int beta = req.spec.beta;
        const InducedOp op = req.op;
        SDerivOptions o;
        o.lo = kWindowLo;
        o.hi = kWindowHi;
        o.noise = 1e-15;
        F = s_derivatives([&](double s) { return induced_limit(beta, s, op); }, req.s, kmax, o);
    }
    out.orders.push_back(F[0]);
    long double total = F[0];
    for (int j = 1; j <= req.m; ++j) {
        long double g = 0;
        std::vector<QPoly> row = table.row(req.spec.beta, j);
        for (int k = 1; k <= 2 * j; ++k) g += (long double)eval_st(row[k - 1], req.s, out.frame.tau) * F[k];
        double c = double(std::pow((long double)out.frame.h, j) * g);
        out.orders.push_back(c);
        total += c;
    }
    out.value = double(total);
    return out;
}

ExpansionGrid evaluate_grid(const EnsembleSpec& spec, const InducedOp& op, int m, const std::vector<double>& s_grid,
                            const CoefficientTable& table)
{
    check_request(spec, op, m, table);
    require(!s_grid.empty(), Status::invalid_argument, "empty s grid");
    for (double s : s_grid) check_window(s);
    ExpansionGrid out;
    out.s = s_grid;
    out.frame = expansion_frame(spec);
    const size_t S = s_grid.size();
    const int kmax = 2 * m + 1;

    // derivative series F^(k), k <= 2m + 1
    std::vector<ChebSeries> Fk;
    if (trivially_one(op)) {
        Fk.assign(kmax + 1, ChebSeries(kWindowLo, kWindowHi, {0.0L}));
        Fk[0] = ChebSeries(kWindowLo, kWindowHi, {1.0L});
    } else {
        auto [mn, mx] = std::minmax_element(s_grid.begin(), s_grid.end());
        double a = std::max(kWindowLo, *mn - 0.5), b = std::min(kWindowHi, *mx + 0.5);
        if (b - a < 1) {
            a = std::max(kWindowLo, a - 0.5);
            b = std::min(kWindowHi, b + 0.5);
        }
        const int beta = spec.beta;
        auto f = [&](double s) { return induced_limit(beta, s, op); };
        ChebSeries c;
        int degree = 32;
        for (;; degree *= 2) {
            c = ChebSeries::fit(f, a, b, degree);
            double peak = 0;
            for (auto v : c.coeffs()) peak = std::max(peak, double(std::fabs(v)));
            if (c.tail() <= 1e-14 * peak) break;
            require(degree < 512, Status::not_converged, "evaluate_grid: Chebyshev fit of the limit law did not resolve");
        }
        out.fit_degree = degree;
        c = c.chopped();
        for (int k = 0; k <= kmax; ++k) {
            Fk.push_back(c);
            c = c.derivative();
        }
    }

    out.value.assign(m + 1, std::vector<double>(S));
    out.density.assign(m + 1, std::vector<double>(S));
    std::vector<std::vector<QPoly>> rows(m + 1), drows(m + 1);
    for (int j = 1; j <= m; ++j) {
        rows[j] = table.row(spec.beta, j);
        for (auto& p : rows[j]) drows[j].push_back(p.ds());
    }
    for (size_t i = 0; i < S; ++i) {
        const double s = s_grid[i];
        std::vector<double> F(kmax + 1);
        for (int k = 0; k <= kmax; ++k) F[k] = Fk[k](s);
        long double v = F[0], d = F[1];
        out.value[0][i] = double(v);
        out.density[0][i] = double(d);
        for (int j = 1; j <= m; ++j) {
            long double gv = 0, gd = 0;
            for (int k = 1; k <= 2 * j; ++k) {
                long double P = eval_st(rows[j][k - 1], s, out.frame.tau);
                long double dP = eval_st(drows[j][k - 1], s, out.frame.tau);
                gv += P * F[k];
                gd += dP * F[k] + P * F[k + 1];
            }
            long double hj = std::pow((long double)out.frame.h, j);
            v += hj * gv;
            d += hj * gd;
            out.value[j][i] = double(v);
            out.density[j][i] = double(d);
        }
    }
    return out;
}

} // namespace softedge
