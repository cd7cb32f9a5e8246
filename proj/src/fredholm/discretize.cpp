#include "fredholm/discretize.hpp"

#include "airy/airy.hpp"
#include "core/error.hpp"
#include "fredholm/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace softedge {

double airy_kernel(double x, double y)
{
    auto a = detail::airy_ld(x);
    if (x == y) return double(a.aip * a.aip - x * a.ai * a.ai);
    auto b = detail::airy_ld(y);
    return double((a.ai * b.aip - a.aip * b.ai) / ((long double)x - y));
}

KernelDiscretization discretize(Kernel kernel, double s, int m)
{
    require(m >= 8, Status::invalid_argument, "Nystrom discretization needs m >= 8");
    require(std::isfinite(s), Status::invalid_argument, "left endpoint must be finite");
    KernelDiscretization d;
    d.kernel = kernel;
    d.s = s;
    d.m = m;
    const auto& g = gauss_legendre<double>(m);
    for (int i = 0; i < m; ++i) {
        double t = g.x[i];
        double x = s + kMapScale * (1 + t) / (1 - t);
        if (x > s + kDropBeyond) continue;
        d.nodes.push_back(x);
        d.weights.push_back(g.w[i] * 2 * kMapScale / ((1 - t) * (1 - t)));
    }
    int k = int(d.nodes.size());
    std::vector<detail::AiryPairL> ai(k);
    std::vector<long double> sw(k);
    for (int i = 0; i < k; ++i) {
        ai[i] = detail::airy_ld(d.nodes[i]);
        sw[i] = std::sqrt((long double)d.weights[i]);
    }
    d.matrix.resize(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            long double v;
            if (kernel == Kernel::AiryK) {
                if (i == j) {
                    v = ai[i].aip * ai[i].aip - (long double)d.nodes[i] * ai[i].ai * ai[i].ai;
                } else {
                    v = (ai[i].ai * ai[j].aip - ai[i].aip * ai[j].ai)
                        / ((long double)d.nodes[i] - d.nodes[j]);
                }
            } else {
                v = 0.5L * detail::airy_ld(0.5L * ((long double)d.nodes[i] + d.nodes[j])).ai;
            }
            double e = double(sw[i] * v * sw[j]);
            d.matrix(i, j) = e;
            d.matrix(j, i) = e;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d.matrix, Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, Status::internal, "symmetric eigensolver failed");
    d.spectrum.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
    std::sort(d.spectrum.begin(), d.spectrum.end(), std::greater<double>());
    return d;
}

double det_direct(const KernelDiscretization& d, double xi)
{
    int k = int(d.nodes.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k) - xi * d.matrix;
    return A.partialPivLu().determinant();
}

XiJet spectral_product(const std::vector<double>& v, const XiJet& t, double sign)
{
    XiJet p = XiJet::constant(t.center(), t.order(), 1.0);
    int J = t.order();
    std::vector<double> f(J + 1);
    for (double nu : v) {
        for (int k = 0; k <= J; ++k) f[k] = sign * nu * t[k];
        f[0] += 1;
        // p *= f, in place
        for (int k = J; k >= 0; --k) {
            double s = 0;
            for (int i = 0; i <= k; ++i) s += p[i] * f[k - i];
            p[k] = s;
        }
    }
    return p;
}

XiJet det_jet(const KernelDiscretization& d, double xi_star, int order, SignMode mode)
{
    XiJet x = XiJet::variable(xi_star, order);
    if (mode == SignMode::Linear) return spectral_product(d.spectrum, x, -1.0);
    require(xi_star > 0, Status::invalid_argument,
            "sqrt(xi) is not analytic at xi = 0; use the sqrt(xi) variable directly");
    XiJet t = x.sqrt();
    return spectral_product(d.spectrum, t, mode == SignMode::MinusSqrt ? -1.0 : 1.0);
}

} // namespace softedge
