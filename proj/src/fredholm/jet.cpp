#include "fredholm/jet.hpp"

#include "core/error.hpp"

#include <cmath>

namespace softedge {

XiJet::XiJet(double center, int order) : center_(center), c_(size_t(order) + 1, 0.0)
{
    require(order >= 0, Status::invalid_argument, "jet order must be nonnegative");
}

XiJet XiJet::constant(double center, int order, double value)
{
    XiJet j(center, order);
    j.c_[0] = value;
    return j;
}

XiJet XiJet::variable(double center, int order)
{
    XiJet j(center, order);
    j.c_[0] = center;
    if (order >= 1) j.c_[1] = 1;
    return j;
}

double XiJet::derivative(int k) const
{
    require(k >= 0 && k <= order(), Status::out_of_range, "derivative order exceeds jet order");
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
}

double XiJet::eval(double xi) const
{
    double t = xi - center_, r = 0;
    for (int k = order(); k >= 0; --k) r = r * t + c_[k];
    return r;
}

void XiJet::check(const XiJet& o) const
{
    require(o.center_ == center_ && o.c_.size() == c_.size(), Status::invalid_argument,
            "jets with different centers or orders");
}

XiJet& XiJet::operator+=(const XiJet& o)
{
    check(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

XiJet& XiJet::operator-=(const XiJet& o)
{
    check(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

XiJet& XiJet::operator*=(const XiJet& o)
{
    check(o);
    int J = order();
    for (int k = J; k >= 0; --k) {
        double s = 0;
        for (int i = 0; i <= k; ++i) s += c_[i] * o.c_[k - i];
        c_[k] = s;
    }
    return *this;
}

XiJet& XiJet::operator/=(const XiJet& o)
{
    check(o);
    require(o.c_[0] != 0, Status::invalid_argument, "jet division by a series vanishing at the center");
    int J = order();
    std::vector<double> r(c_.size());
    for (int k = 0; k <= J; ++k) {
        double s = c_[k];
        for (int i = 1; i <= k; ++i) s -= o.c_[i] * r[k - i];
        r[k] = s / o.c_[0];
    }
    c_ = r;
    return *this;
}

XiJet& XiJet::operator*=(double a)
{
    for (double& v : c_) v *= a;
    return *this;
}

XiJet& XiJet::operator+=(double a)
{
    c_[0] += a;
    return *this;
}

XiJet XiJet::sqrt() const
{
    require(c_[0] > 0, Status::invalid_argument,
            "square root of a jet needs a positive value at the center");
    XiJet r(center_, order());
    r.c_[0] = std::sqrt(c_[0]);
    for (int k = 1; k <= order(); ++k) {
        double s = c_[k];
        for (int i = 1; i < k; ++i) s -= r.c_[i] * r.c_[k - i];
        r.c_[k] = s / (2 * r.c_[0]);
    }
    return r;
}

XiJet operator+(XiJet a, const XiJet& b) { return a += b; }
XiJet operator-(XiJet a, const XiJet& b) { return a -= b; }
XiJet operator*(XiJet a, const XiJet& b) { return a *= b; }
XiJet operator/(XiJet a, const XiJet& b) { return a /= b; }
XiJet operator*(double a, XiJet b) { return b *= a; }
XiJet operator+(double a, XiJet b) { return b += a; }
XiJet operator-(double a, const XiJet& b)
{
    XiJet r = b;
    r *= -1.0;
    r += a;
    return r;
}

} // namespace softedge
