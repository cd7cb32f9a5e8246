#include "expansion/rational.hpp"

#include "core/error.hpp"

#include <cmath>

namespace softedge {

namespace {

mpz_class floor_q(const mpq_class& x)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

// simplest fraction in the closed interval [lo, hi], 0 <= lo <= hi
mpq_class simplest_between(const mpq_class& lo, const mpq_class& hi)
{
    mpz_class fl = floor_q(lo);
    if (mpq_class(fl) == lo) return mpq_class(fl);
    if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
    mpq_class inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
    return mpq_class(fl) + 1 / inner;
}

} // namespace

std::optional<mpq_class> simplest_rational(double x, double tol, long max_den)
{
    require(std::isfinite(x) && tol > 0 && max_den >= 1, Status::invalid_argument, "simplest_rational: bad input");
    double ax = std::fabs(x);
    mpq_class r = ax - tol <= 0 ? mpq_class(0) : simplest_between(mpq_class(ax - tol), mpq_class(ax + tol));
    r.canonicalize();
    if (r.get_den() > max_den) return std::nullopt;
    if (x < 0) r = -r;
    return r;
}

} // namespace softedge
