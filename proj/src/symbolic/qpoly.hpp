#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace softedge {

// Exact polynomial in Q[s, tau, q, p], p standing for q'.
class QPoly {
public:
    enum Var { S = 0, Tau = 1, Q = 2, P = 3 };
    using Exp = std::array<int, 4>;
    using Terms = std::map<Exp, mpq_class>;

    QPoly() = default;
    QPoly(const mpq_class& c);
    QPoly(long c) : QPoly(mpq_class(c)) {}
    QPoly(int c) : QPoly(mpq_class(c)) {}

    static QPoly var(Var v, int power = 1);
    static QPoly monomial(const Exp& e, const mpq_class& c);
    static QPoly rational(long num, long den);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool operator==(const QPoly& o) const { return t_ == o.t_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const QPoly& o);
    QPoly& operator*=(const mpq_class& c);
    QPoly operator-() const;

    int degree(Var v) const;
    int total_degree() const;
    // true when no q or p appears
    bool is_s_tau() const;
    // Q[s, tau] coefficient of q^eq p^ep
    QPoly coefficient(int eq, int ep) const;
    std::set<std::pair<int, int>> qp_support() const;
    // partial derivative in s (tau, q, p held fixed)
    QPoly ds() const;
    // substitute rationals for s and tau
    QPoly specialize(const mpq_class& s, const mpq_class& tau) const;

    std::string str() const;

private:
    void add_term(const Exp& e, const mpq_class& c);
    Terms t_;
};

QPoly operator+(QPoly a, const QPoly& b);
QPoly operator-(QPoly a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const mpq_class& c, QPoly a);
QPoly pow(const QPoly& a, int n);

std::set<std::pair<int, int>> qp_support(const std::vector<QPoly>& polys);

} // namespace softedge
