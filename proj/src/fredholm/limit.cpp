#include "fredholm/limit.hpp"

#include "core/error.hpp"

#include <cmath>
#include <string>

namespace softedge {

InducedOp InducedOp::generating(double xi)
{
    InducedOp op;
    op.xi_star = xi;
    op.terms = {{0, 1.0}};
    return op;
}

InducedOp InducedOp::kth_largest(int k)
{
    require(k >= 0, Status::invalid_argument, "k must be nonnegative");
    InducedOp op;
    op.xi_star = 1.0;
    double f = 1;
    for (int r = 0; r <= k; ++r) {
        if (r > 0) f *= r;
        op.terms.push_back({r, (r % 2 ? -1.0 : 1.0) / f});
    }
    return op;
}

int InducedOp::max_order() const
{
    int m = 0;
    for (auto& t : terms) m = std::max(m, t.first);
    return m;
}

double InducedOp::apply(const XiJet& jet) const
{
    require(jet.order() >= max_order(), Status::invalid_argument,
            "jet order below the order of the induced functional");
    double v = 0;
    for (auto& t : terms) v += t.second * jet.derivative(t.first);
    return v;
}

void check_window(double s)
{
    require(s >= kWindowLo && s <= kWindowHi, Status::out_of_range,
            "s = " + std::to_string(s) + " outside the working window [-10, 8]");
}

static void check_xi(double xi)
{
    require(xi >= 0 && xi <= 1, Status::out_of_range, "xi must lie in [0, 1]");
}

static void check_beta(int beta)
{
    require(beta == 1 || beta == 2 || beta == 4, Status::invalid_argument, "beta must be 1, 2 or 4");
}

XiJet limit_jet_from(int beta, const KernelDiscretization& d, double xi_star, int order)
{
    check_beta(beta);
    check_xi(xi_star);
    if (beta == 2) {
        require(d.kernel == Kernel::AiryK, Status::invalid_argument, "beta = 2 needs the Airy kernel");
        return det_jet(d, xi_star, order, SignMode::Linear);
    }
    require(d.kernel == Kernel::VAi, Status::invalid_argument, "beta = 1, 4 need the V_Ai kernel");
    XiJet x = XiJet::variable(xi_star, order);
    if (beta == 4) {
        if (xi_star == 0) {
            // even part of prod(1 - t nu) in t = sqrt(xi): sum_k e_{2k}(nu) xi^k
            std::vector<double> e(d.spectrum.size() + 1, 0.0);
            e[0] = 1;
            for (size_t i = 0; i < d.spectrum.size(); ++i)
                for (size_t k = i + 1; k >= 1; --k) e[k] += d.spectrum[i] * e[k - 1];
            XiJet r(0.0, order);
            for (int k = 0; k <= order && size_t(2 * k) < e.size(); ++k) r[k] = e[2 * k];
            return r;
        }
        XiJet t = x.sqrt();
        XiJet r = spectral_product(d.spectrum, t, -1.0) + spectral_product(d.spectrum, t, 1.0);
        r *= 0.5;
        return r;
    }
    // beta = 1 through xi_bar = xi (2 - xi) and c = xi / sqrt(xi_bar) = sqrt(xi / (2 - xi))
    require(xi_star > 0 || order == 0, Status::invalid_argument,
            "beta = 1 jets need xi* > 0 (the prefactor sqrt(xi/(2-xi)) is not analytic at 0)");
    if (xi_star == 0) return XiJet::constant(0.0, 0, 1.0);
    XiJet xbar = x * (2.0 - x);
    XiJet t = xbar.sqrt();
    XiJet c = (x / (2.0 - x)).sqrt();
    XiJet r = spectral_product(d.spectrum, t, -1.0) * (1.0 + c) + spectral_product(d.spectrum, t, 1.0) * (1.0 - c);
    r *= 0.5;
    return r;
}

XiJet limit_F_jet(int beta, double s, double xi_star, int order, int m)
{
    check_beta(beta);
    check_window(s);
    check_xi(xi_star);
    auto d = discretize(beta == 2 ? Kernel::AiryK : Kernel::VAi, s, m);
    return limit_jet_from(beta, d, xi_star, order);
}

double limit_F(int beta, double s, double xi, int m)
{
    check_beta(beta);
    check_window(s);
    check_xi(xi);
    if (xi == 0) return 1.0;
    return limit_F_jet(beta, s, xi, 0, m).value();
}

XiJet F_pm_jet(int sign, double s, double xi_star, int order, int m)
{
    require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
    check_window(s);
    check_xi(xi_star);
    auto d = discretize(Kernel::VAi, s, m);
    return det_jet(d, xi_star, order, sign > 0 ? SignMode::MinusSqrt : SignMode::PlusSqrt);
}

double F_pm(int sign, double s, double xi, int m)
{
    require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
    check_window(s);
    check_xi(xi);
    if (xi == 0) return 1.0;
    return F_pm_jet(sign, s, xi, 0, m).value();
}

double induced_limit(int beta, double s, const InducedOp& op, int m)
{
    int order = op.max_order();
    if (order == 0 && op.xi_star == 0) {
        double v = 0;
        for (auto& t : op.terms) v += t.second;
        return v;
    }
    return op.apply(limit_F_jet(beta, s, op.xi_star, order, m));
}

double kth_largest_limit_cdf(int beta, int k, double s, int order, int m)
{
    require(k >= 0, Status::invalid_argument, "k must be nonnegative");
    if (order < 0) order = k;
    require(order >= k, Status::invalid_argument, "jet order must be at least k");
    return InducedOp::kth_largest(k).apply(limit_F_jet(beta, s, 1.0, order, m));
}

} // namespace softedge
