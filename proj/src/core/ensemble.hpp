#pragma once

#include "core/error.hpp"

namespace softedge {

enum class Family { Gaussian, Laguerre };

struct EnsembleSpec {
    Family family = Family::Gaussian;
    int beta = 2;
    int n = 1;
    double p = 0.0; // Laguerre only
};

// Soft-edge frame: x = mu + sigma * s.
struct ScalingParams {
    double mu = 0, sigma = 0, h = 0, tau = 0;
    double n_prime = 0;
};

void validate(const EnsembleSpec& spec);

// Weight exponent constant: w(x) = exp(-c x^2) or x^alpha exp(-c x).
double c_beta(int beta);

// alpha from p = n - 1 + 2(alpha+1)/beta.
double alpha_of(const EnsembleSpec& spec);
double p_of_alpha(int beta, int n, double alpha);

// Shifted index: n - 1/2, n, 2n + 1/2 for beta = 1, 2, 4.
double n_prime(int beta, double n);

// Scaling at a (possibly half-integer) effective index nu; p_nu is the
// Laguerre parameter at the same shift and is ignored for Gaussian.
ScalingParams scaling(Family family, double nu, double p_nu = 0.0);

// Frame used by the expansions: scaling at n' with p shifted alike.
ScalingParams expansion_frame(const EnsembleSpec& spec);

// Frame of the unshifted index, used for beta = 2 finite-n work.
ScalingParams plain_frame(const EnsembleSpec& spec);

// tau as a function of the aspect ratio p/n alone.
double tau_of_ratio(double r);

const char* family_name(Family f);

} // namespace softedge
