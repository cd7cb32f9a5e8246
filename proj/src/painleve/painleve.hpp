#pragma once

#include "fredholm/chebyshev.hpp"

#include <vector>

namespace softedge {

// q'' = s q + 2 q^3 with q ~ sqrt(xi) Ai(s) as s -> +inf, collocated on
// Chebyshev-Lobatto points of [-L_minus, L_plus] (index 0 is the right end).
struct PIISolution {
    double xi = 0;
    double L_minus = 0, L_plus = 0;
    std::vector<double> grid, q_values, q_prime_values;
    ChebSeries q, qp;
    ChebSeries int_q;   // s -> int_{-L_minus}^s q
    ChebSeries int_u00; // s -> int_{-L_minus}^s (q'^2 - t q^2 - q^4)
    double right_tail_q = 0; // int_{L_plus}^inf q, from the Airy asymptote
    double log_F2_right = 0; // log F2(L_plus) = -xi tr K_Ai on (L_plus, inf)
    double residual = 0;     // max ODE residual at interior nodes
    int iterations = 0;

    double q_at(double s) const;
    double qp_at(double s) const;
};

struct PIIOptions {
    double L_minus = 10.0;
    double L_plus = 10.0;
    int degree = 200;
    int max_iterations = 60;
};

PIISolution solve_q(double xi, const PIIOptions& opt = {});

enum class PTarget { F2, Fplus, Fminus };

double F_via_painleve(const PIISolution& sol, PTarget target, double s);
// Convenience route with a cached default solution per xi.
double F_via_painleve(PTarget target, double s, double xi);

struct TotalIntegral {
    double value = 0;     // int_{-inf}^{inf} q
    double window = 0;    // over [-L_minus, L_plus]
    double right_tail = 0;
    double continuation = 0; // int over [S, -L_minus] by Taylor continuation
    double left_remainder = 0; // int_{-inf}^{S} from integration by parts
    double tail_error = 0;     // bound on the neglected remainder
    double reference = 0;      // artanh sqrt(xi)
    double far_left = 0;       // S
};

// pre: 0 < xi < 1.  Throws Status::not_converged when tail_error > tail_tolerance.
TotalIntegral total_integral(double xi, double far_left = -2000.0, double tail_tolerance = 1e-7);

// int_{-inf}^{s} q for s <= -L_minus by continuation; used for the far-left
// behaviour of exp(-int_s^inf q).
double left_tail_integral(const PIISolution& sol, double s_from, double far_left, double* error_bound = nullptr);

} // namespace softedge
