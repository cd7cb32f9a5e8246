#pragma once

#include <vector>

namespace softedge {

// Truncated Taylor series in xi about a center: sum_k c_k (xi - center)^k, k <= order.
class XiJet {
public:
    XiJet() = default;
    XiJet(double center, int order);

    static XiJet constant(double center, int order, double value);
    static XiJet variable(double center, int order);

    double center() const { return center_; }
    int order() const { return int(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double operator[](int k) const { return c_[k]; }
    double& operator[](int k) { return c_[k]; }

    double value() const { return c_[0]; }
    // k-th xi-derivative at the center
    double derivative(int k) const;
    // evaluate the truncated series at xi
    double eval(double xi) const;

    XiJet& operator+=(const XiJet& o);
    XiJet& operator-=(const XiJet& o);
    XiJet& operator*=(const XiJet& o);
    XiJet& operator/=(const XiJet& o);
    XiJet& operator*=(double a);
    XiJet& operator+=(double a);

    XiJet sqrt() const;

private:
    void check(const XiJet& o) const;
    double center_ = 0;
    std::vector<double> c_{0.0};
};

XiJet operator+(XiJet a, const XiJet& b);
XiJet operator-(XiJet a, const XiJet& b);
XiJet operator*(XiJet a, const XiJet& b);
XiJet operator/(XiJet a, const XiJet& b);
XiJet operator*(double a, XiJet b);
XiJet operator+(double a, XiJet b);
XiJet operator-(double a, const XiJet& b);

} // namespace softedge
