#include "core/ensemble.hpp"

#include <cmath>
#include <string>

namespace softedge {

const char* status_name(Status st)
{
    switch (st) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid_argument";
    case Status::out_of_range: return "out_of_range";
    case Status::not_converged: return "not_converged";
    case Status::infeasible: return "infeasible";
    case Status::degree_bound: return "degree_bound";
    case Status::non_unique: return "non_unique";
    case Status::io: return "io";
    case Status::validation: return "validation";
    case Status::internal: return "internal";
    }
    return "unknown";
}

const char* family_name(Family f) { return f == Family::Gaussian ? "gaussian" : "laguerre"; }

static void check_beta(int beta)
{
    require(beta == 1 || beta == 2 || beta == 4, Status::invalid_argument,
            "beta must be 1, 2 or 4 (got " + std::to_string(beta) + ")");
}

void validate(const EnsembleSpec& spec)
{
    check_beta(spec.beta);
    require(spec.n >= 1, Status::invalid_argument, "n must be positive");
    if (spec.family == Family::Laguerre)
        require(spec.p > spec.n - 1, Status::invalid_argument,
                "Laguerre ensembles need p > n - 1");
}

double c_beta(int beta)
{
    check_beta(beta);
    return beta == 1 ? 0.5 : 1.0;
}

double alpha_of(const EnsembleSpec& spec)
{
    check_beta(spec.beta);
    return 0.5 * spec.beta * (spec.p - spec.n + 1) - 1.0;
}

double p_of_alpha(int beta, int n, double alpha)
{
    check_beta(beta);
    return n - 1 + 2.0 * (alpha + 1.0) / beta;
}

static double shift_index(int beta, double x)
{
    switch (beta) {
    case 1: return x - 0.5;
    case 4: return 2 * x + 0.5;
    default: return x;
    }
}

double n_prime(int beta, double n)
{
    check_beta(beta);
    require(n >= 1, Status::invalid_argument, "n must be at least 1");
    return shift_index(beta, n);
}

double tau_of_ratio(double r)
{
    double k = std::sqrt(r);
    return 4 * k / ((1 + k) * (1 + k));
}

ScalingParams scaling(Family family, double nu, double p_nu)
{
    require(nu > 0, Status::invalid_argument, "effective index must be positive");
    ScalingParams sp;
    sp.n_prime = nu;
    if (family == Family::Gaussian) {
        sp.mu = std::sqrt(2 * nu);
        sp.sigma = std::pow(nu, -1.0 / 6) / std::sqrt(2.0);
        sp.h = std::pow(nu, -2.0 / 3) / 4;
        sp.tau = 0;
        return sp;
    }
    require(p_nu > 0, Status::invalid_argument, "shifted Laguerre parameter must be positive");
    double a = std::sqrt(nu), b = std::sqrt(p_nu);
    double inv = 1 / a + 1 / b;
    sp.mu = (a + b) * (a + b);
    sp.sigma = (a + b) * std::cbrt(inv);
    sp.h = std::pow(inv, 4.0 / 3) / 4;
    sp.tau = 4 / ((a + b) * inv);
    return sp;
}

ScalingParams expansion_frame(const EnsembleSpec& spec)
{
    validate(spec);
    double np = n_prime(spec.beta, spec.n);
    // p follows the same index map as n
    double pp = spec.family == Family::Laguerre ? shift_index(spec.beta, spec.p) : 0.0;
    return scaling(spec.family, np, pp);
}

ScalingParams plain_frame(const EnsembleSpec& spec)
{
    validate(spec);
    return scaling(spec.family, spec.n, spec.p);
}

} // namespace softedge
