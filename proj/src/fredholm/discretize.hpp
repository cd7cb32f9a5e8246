#pragma once

#include "fredholm/jet.hpp"

#include <Eigen/Dense>
#include <vector>

namespace softedge {

enum class Kernel { AiryK, VAi };

// Nystrom discretization on (s, inf) with x = s + L (1+t)/(1-t), L = 4,
// Gauss-Legendre in t; nodes beyond s + 60 are dropped.
struct KernelDiscretization {
    Kernel kernel = Kernel::AiryK;
    double s = 0;
    int m = 0; // size of the underlying rule
    std::vector<double> nodes, weights;
    Eigen::MatrixXd matrix; // W^{1/2} K W^{1/2}
    std::vector<double> spectrum; // descending
};

constexpr int kDefaultNodes = 80;
constexpr double kMapScale = 4.0;
constexpr double kDropBeyond = 60.0;

KernelDiscretization discretize(Kernel kernel, double s, int m = kDefaultNodes);

// det(I - xi * matrix) by LU, independent of the spectrum.
double det_direct(const KernelDiscretization& d, double xi);

enum class SignMode {
    Linear,    // prod (1 - xi lambda)
    MinusSqrt, // prod (1 - sqrt(xi) nu), i.e. F_+
    PlusSqrt,  // prod (1 + sqrt(xi) nu), i.e. F_-
};

XiJet det_jet(const KernelDiscretization& d, double xi_star, int order, SignMode mode);

// prod_i (1 + sign * t * v_i) for a jet t
XiJet spectral_product(const std::vector<double>& v, const XiJet& t, double sign);

double airy_kernel(double x, double y);

} // namespace softedge
