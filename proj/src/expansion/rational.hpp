#pragma once

#include <gmpxx.h>

#include <optional>

namespace softedge {

// Simplest rational (smallest denominator) in [x - tol, x + tol], if its
// denominator does not exceed max_den.
std::optional<mpq_class> simplest_rational(double x, double tol, long max_den);

} // namespace softedge
