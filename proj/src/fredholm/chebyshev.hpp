#pragma once

#include <functional>
#include <vector>

namespace softedge {

// Chebyshev expansion sum c_k T_k(t), coefficients kept in extended precision, with t the affine image of [a, b] on [-1, 1].
class ChebSeries {
public:
    ChebSeries() = default;
    ChebSeries(double a, double b, std::vector<long double> coeffs);

    // Interpolate f at the degree+1 Chebyshev-Lobatto points of [a, b].
    static ChebSeries fit(const std::function<double(double)>& f, double a, double b, int degree);
    // Values at lobatto_points(a, b, degree), in that order.
    static ChebSeries from_values(double a, double b, const std::vector<double>& values);
    static ChebSeries from_values(double a, double b, const std::vector<long double>& values);
    // cos(pi j / N) mapped to [a, b]; j = 0 is the right end b.
    static std::vector<double> lobatto_points(double a, double b, int degree);

    double operator()(double x) const;
    ChebSeries derivative() const;
    // Antiderivative vanishing at a.
    ChebSeries integral() const;
    double definite_integral() const;

    double a() const { return a_; }
    double b() const { return b_; }
    int degree() const { return int(c_.size()) - 1; }
    const std::vector<long double>& coeffs() const { return c_; }
    // drop trailing coefficients below rel * max |c_k| (rounding plateau)
    ChebSeries chopped(double rel = 1e-15) const;
    // max |c_k| over the last quarter of the coefficients
    double tail() const;

private:
    double a_ = -1, b_ = 1;
    std::vector<long double> c_;
};

struct SDerivOptions {
    double width = 6.0;
    int degree = 40;
    // windows are shifted to stay inside [lo, hi]
    double lo = -1e300, hi = 1e300;
    bool validate = true;
    // absolute noise level of f; mismatches below its amplification are accepted
    double noise = 0.0;
};

// f(s0), f'(s0), ..., f^(kmax)(s0).  Throws Status::validation when the
// degree-doubled fit disagrees beyond the graded tolerance.
std::vector<double> s_derivatives(const std::function<double(double)>& f, double s0, int kmax,
                                  const SDerivOptions& opt = {});

// Graded relative tolerance used by the self-validation: 1e-8 up to k = 2,
// then a factor sqrt(10) per order (1e-5 at k = 8).
double s_derivative_tolerance(int k);

} // namespace softedge
