#include "fredholm/chebyshev.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace softedge {

ChebSeries::ChebSeries(double a, double b, std::vector<long double> coeffs) : a_(a), b_(b), c_(std::move(coeffs))
{
    require(b > a, Status::invalid_argument, "empty Chebyshev interval");
}

std::vector<double> ChebSeries::lobatto_points(double a, double b, int degree)
{
    std::vector<double> x(degree + 1);
    for (int j = 0; j <= degree; ++j) {
        double t = std::cos(M_PI * j / degree);
        x[j] = a + (b - a) * (t + 1) / 2;
    }
    return x;
}

ChebSeries ChebSeries::from_values(double a, double b, const std::vector<double>& v)
{
    return from_values(a, b, std::vector<long double>(v.begin(), v.end()));
}

ChebSeries ChebSeries::from_values(double a, double b, const std::vector<long double>& v)
{
    int N = int(v.size()) - 1;
    require(N >= 1, Status::invalid_argument, "need at least two samples");
    std::vector<long double> cs(2 * N);
    for (int r = 0; r < 2 * N; ++r) cs[r] = std::cos(M_PIl * r / N);
    std::vector<long double> c(N + 1);
    for (int k = 0; k <= N; ++k) {
        long double s = 0;
        for (int j = 0; j <= N; ++j) {
            long double w = (j == 0 || j == N) ? 0.5L : 1.0L;
            s += w * v[j] * cs[(j * k) % (2 * N)];
        }
        long double ck = 2 * s / N;
        if (k == 0 || k == N) ck /= 2;
        c[k] = ck;
    }
    return ChebSeries(a, b, std::move(c));
}

ChebSeries ChebSeries::fit(const std::function<double(double)>& f, double a, double b, int degree)
{
    auto x = lobatto_points(a, b, degree);
    std::vector<double> v(x.size());
    for (size_t j = 0; j < x.size(); ++j) v[j] = f(x[j]);
    return from_values(a, b, v);
}

double ChebSeries::operator()(double x) const
{
    long double t = (2 * (long double)x - a_ - b_) / ((long double)b_ - a_);
    long double b1 = 0, b2 = 0;
    for (int k = degree(); k >= 1; --k) {
        long double b0 = 2 * t * b1 - b2 + c_[k];
        b2 = b1;
        b1 = b0;
    }
    return double(t * b1 - b2 + c_[0]);
}

ChebSeries ChebSeries::derivative() const
{
    int N = degree();
    if (N == 0) return ChebSeries(a_, b_, {0.0L});
    std::vector<long double> d(N, 0.0L);
    long double sc = 2 / ((long double)b_ - a_);
    for (int k = N - 1; k >= 0; --k) {
        long double up = (k + 2 <= N - 1) ? d[k + 2] : 0.0L;
        d[k] = up + 2 * (k + 1) * c_[k + 1];
    }
    d[0] /= 2;
    for (long double& v : d) v *= sc;
    return ChebSeries(a_, b_, std::move(d));
}

ChebSeries ChebSeries::integral() const
{
    int N = degree();
    std::vector<long double> C(N + 2, 0.0L);
    long double sc = ((long double)b_ - a_) / 2;
    for (int k = 1; k <= N + 1; ++k) {
        long double lo = c_[k - 1] * (k - 1 == 0 ? 2.0L : 1.0L);
        long double hi = (k + 1 <= N) ? c_[k + 1] : 0.0L;
        C[k] = sc * (lo - hi) / (2 * k);
    }
    // fix the constant so that the value at t = -1 vanishes
    long double v = 0;
    for (int k = 1; k <= N + 1; ++k) v += (k % 2 ? -1.0L : 1.0L) * C[k];
    C[0] = -v;
    return ChebSeries(a_, b_, std::move(C));
}

double ChebSeries::definite_integral() const
{
    long double s = 0;
    for (int k = 0; k <= degree(); k += 2) s += c_[k] * 2.0L / (1.0L - (long double)k * k);
    return double(s * ((long double)b_ - a_) / 2);
}

ChebSeries ChebSeries::chopped(double rel) const
{
    long double m = 0;
    for (long double v : c_) m = std::max(m, std::fabs(v));
    int last = degree();
    while (last > 0 && std::fabs(c_[last]) <= rel * m) --last;
    return ChebSeries(a_, b_, std::vector<long double>(c_.begin(), c_.begin() + last + 1));
}

double ChebSeries::tail() const
{
    int N = degree();
    long double m = 0;
    for (int k = N - N / 4; k <= N; ++k) m = std::max(m, std::fabs(c_[k]));
    return double(m);
}

double s_derivative_tolerance(int k)
{
    return k <= 2 ? 1e-8 : 1e-8 * std::pow(10.0, 0.5 * (k - 2));
}

static std::string fmt_g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<double> s_derivatives(const std::function<double(double)>& f, double s0, int kmax,
                                  const SDerivOptions& opt)
{
    require(kmax >= 0 && kmax <= 8, Status::invalid_argument, "s_derivatives supports kmax <= 8");
    require(opt.width > 0 && opt.degree >= 8, Status::invalid_argument, "bad differentiation window");
    double a = s0 - opt.width / 2, b = s0 + opt.width / 2;
    if (b > opt.hi) {
        a -= b - opt.hi;
        b = opt.hi;
    }
    if (a < opt.lo) {
        b += opt.lo - a;
        a = opt.lo;
    }
    require(a >= opt.lo && b <= opt.hi, Status::out_of_range, "differentiation window exceeds the domain");

    auto derivs = [&](int degree, std::vector<double>& scale) {
        ChebSeries c = ChebSeries::fit(f, a, b, degree).chopped();
        std::vector<double> out(kmax + 1);
        scale.assign(kmax + 1, 0.0);
        auto nodes = ChebSeries::lobatto_points(a, b, degree);
        for (int k = 0; k <= kmax; ++k) {
            out[k] = c(s0);
            for (double x : nodes) scale[k] = std::max(scale[k], std::fabs(c(x)));
            c = c.derivative();
        }
        return out;
    };
    std::vector<double> sc_lo, sc_hi;
    std::vector<double> hi = derivs(2 * opt.degree, sc_hi);
    if (!opt.validate) return hi;
    std::vector<double> lo = derivs(opt.degree, sc_lo);
    double unit = 2 / (b - a);
    for (int k = 0; k <= kmax; ++k) {
        double ref = std::max({std::fabs(hi[k]), 1e-3 * sc_hi[k], 1e-6 * sc_hi[0] * std::pow(unit, k)});
        double err = std::fabs(hi[k] - lo[k]);
        double noise = opt.noise * opt.degree * std::pow(unit * opt.degree, k);
        if (err > s_derivative_tolerance(k) * ref && err > noise && err > 1e-300)
            fail(Status::validation, "s-derivative self-validation failed at order " + std::to_string(k)
                                         + " (s0 = " + std::to_string(s0) + ", mismatch "
                                         + fmt_g(err) + ")");
    }
    return hi;
}

} // namespace softedge
