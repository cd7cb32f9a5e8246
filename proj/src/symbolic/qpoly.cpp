#include "symbolic/qpoly.hpp"

#include "core/error.hpp"

#include <sstream>

namespace softedge {

QPoly::QPoly(const mpq_class& c)
{
    add_term({0, 0, 0, 0}, c);
}

QPoly QPoly::var(Var v, int power)
{
    require(power >= 0, Status::invalid_argument, "QPoly::var: negative power");
    Exp e{0, 0, 0, 0};
    e[v] = power;
    return monomial(e, 1);
}

QPoly QPoly::monomial(const Exp& e, const mpq_class& c)
{
    QPoly r;
    r.add_term(e, c);
    return r;
}

QPoly QPoly::rational(long num, long den)
{
    require(den != 0, Status::invalid_argument, "QPoly::rational: zero denominator");
    mpq_class c(num, den);
    c.canonicalize();
    return QPoly(c);
}

void QPoly::add_term(const Exp& e, const mpq_class& c)
{
    if (c == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        mpq_class v = c;
        v.canonicalize();
        t_.emplace(e, v);
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

QPoly& QPoly::operator+=(const QPoly& o)
{
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o)
{
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

QPoly& QPoly::operator*=(const QPoly& o)
{
    *this = *this * o;
    return *this;
}

QPoly& QPoly::operator*=(const mpq_class& c)
{
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [e, v] : t_) v *= c;
    return *this;
}

QPoly QPoly::operator-() const
{
    QPoly r = *this;
    for (auto& [e, v] : r.t_) v = -v;
    return r;
}

int QPoly::degree(Var v) const
{
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e[v]);
    return is_zero() ? -1 : d;
}

int QPoly::total_degree() const
{
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

bool QPoly::is_s_tau() const
{
    for (const auto& [e, c] : t_)
        if (e[Q] || e[P]) return false;
    return true;
}

QPoly QPoly::coefficient(int eq, int ep) const
{
    QPoly r;
    for (const auto& [e, c] : t_)
        if (e[Q] == eq && e[P] == ep) r.add_term({e[S], e[Tau], 0, 0}, c);
    return r;
}

std::set<std::pair<int, int>> QPoly::qp_support() const
{
    std::set<std::pair<int, int>> out;
    for (const auto& [e, c] : t_) out.insert({e[Q], e[P]});
    return out;
}

QPoly QPoly::ds() const
{
    QPoly r;
    for (const auto& [e, c] : t_)
        if (e[S] > 0) r.add_term({e[S] - 1, e[Tau], e[Q], e[P]}, c * e[S]);
    return r;
}

QPoly QPoly::specialize(const mpq_class& s, const mpq_class& tau) const
{
    QPoly r;
    for (const auto& [e, c] : t_) {
        mpq_class v = c;
        for (int i = 0; i < e[S]; ++i) v *= s;
        for (int i = 0; i < e[Tau]; ++i) v *= tau;
        r.add_term({0, 0, e[Q], e[P]}, v);
    }
    return r;
}

std::string QPoly::str() const
{
    if (is_zero()) return "0";
    static const char* names[4] = {"s", "tau", "q", "p"};
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpq_class a = abs(c);
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        bool unit = a == 1;
        bool has_var = e[0] || e[1] || e[2] || e[3];
        if (!unit || !has_var) os << a.get_str();
        bool need_star = !unit || !has_var;
        for (int v = 0; v < 4; ++v) {
            if (!e[v]) continue;
            if (need_star) os << "*";
            os << names[v];
            if (e[v] > 1) os << "^" << e[v];
            need_star = true;
        }
    }
    return os.str();
}

QPoly operator+(QPoly a, const QPoly& b)
{
    a += b;
    return a;
}

QPoly operator-(QPoly a, const QPoly& b)
{
    a -= b;
    return a;
}

QPoly operator*(const QPoly& a, const QPoly& b)
{
    QPoly r;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms())
            r += QPoly::monomial({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, ca * cb);
    return r;
}

QPoly operator*(const mpq_class& c, QPoly a)
{
    a *= c;
    return a;
}

QPoly pow(const QPoly& a, int n)
{
    require(n >= 0, Status::invalid_argument, "QPoly pow: negative exponent");
    QPoly r(1), b = a;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

std::set<std::pair<int, int>> qp_support(const std::vector<QPoly>& polys)
{
    std::set<std::pair<int, int>> out;
    for (const auto& p : polys) {
        auto s = p.qp_support();
        out.insert(s.begin(), s.end());
    }
    return out;
}

} // namespace softedge
