#pragma once

#include "fredholm/discretize.hpp"
#include "fredholm/jet.hpp"

#include <utility>
#include <vector>

namespace softedge {

constexpr double kWindowLo = -10.0;
constexpr double kWindowHi = 8.0;

// Linear functional sum_r w_r d^r/dxi^r applied at xi_star.
struct InducedOp {
    double xi_star = 1.0;
    std::vector<std::pair<int, double>> terms;

    static InducedOp generating(double xi);
    // CDF of the (k+1)-th largest level: sum_{r<=k} (-1)^r / r! d^r at xi = 1
    static InducedOp kth_largest(int k);
    int max_order() const;
    double apply(const XiJet& jet) const;
};

// F_beta(s; xi) for beta in {1, 2, 4}.
double limit_F(int beta, double s, double xi, int m = kDefaultNodes);
XiJet limit_F_jet(int beta, double s, double xi_star, int order, int m = kDefaultNodes);

// sign = +1: F_+ = det(I - sqrt(xi) V_Ai); sign = -1: F_- = det(I + sqrt(xi) V_Ai)
double F_pm(int sign, double s, double xi, int m = kDefaultNodes);
XiJet F_pm_jet(int sign, double s, double xi_star, int order, int m = kDefaultNodes);

double induced_limit(int beta, double s, const InducedOp& op, int m = kDefaultNodes);

// order < 0 selects order = k
double kth_largest_limit_cdf(int beta, int k, double s, int order = -1, int m = kDefaultNodes);

// Same quantities from a prebuilt discretization (AiryK for beta 2, VAi otherwise).
XiJet limit_jet_from(int beta, const KernelDiscretization& d, double xi_star, int order);

void check_window(double s);

} // namespace softedge
