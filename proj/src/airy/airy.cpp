// Ai and Ai' in extended precision.
//
// The origin values come from the Maclaurin series, the tails from the
// standard asymptotic expansions.  In between, values are propagated on a
// grid of anchors (spacing 1/4) with local Taylor series of y'' = x y:
// leftward from x = 12 on the positive side (stable for the recessive
// solution) and leftward from 0 on the oscillatory side.
#include "airy/airy.hpp"

#include "core/error.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace softedge {

namespace {

using ld = long double;

constexpr ld kPi = 3.141592653589793238462643383279502884L;
constexpr ld kAi0 = 0.355028053887817239260063186004183177L;
constexpr ld kAip0 = -0.258819403792806798405183560189203963L;

constexpr double kGridLo = -15.0;
constexpr double kGridHi = 12.0;
constexpr double kStep = 0.25;

// y(x0 + t) for y'' = x y, from y(x0), y'(x0).
// Coefficients obey a_k = (x0 a_{k-2} + a_{k-3}) / (k (k-1)).
detail::AiryPairL taylor(ld x0, ld y0, ld y1, ld t)
{
    ld am3 = 0, am2 = y0, am1 = y1;
    ld sum = y0 + y1 * t, dsum = y1;
    ld tk1 = t; // t^(k-1)
    ld scale = std::fabs(y0) + std::fabs(y1) + 1e-300L;
    int quiet = 0;
    for (int k = 2; k < 90; ++k) {
        ld ak = (x0 * am2 + am3) / (ld(k) * (k - 1));
        ld dterm = k * ak * tk1;
        tk1 *= t;
        ld term = ak * tk1;
        sum += term;
        dsum += dterm;
        am3 = am2;
        am2 = am1;
        am1 = ak;
        quiet = (std::fabs(term) + std::fabs(dterm) < 1e-22L * scale) ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    return {sum, dsum};
}

std::array<ld, 64> asym_u()
{
    std::array<ld, 64> u{};
    u[0] = 1;
    for (int k = 1; k < 64; ++k)
        u[k] = u[k - 1] * ld(6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (ld(2 * k - 1) * 216 * k);
    return u;
}

const std::array<ld, 64>& U()
{
    static const std::array<ld, 64> u = asym_u();
    return u;
}

ld vcoef(int k) { return k == 0 ? 1.0L : -U()[k] * ld(6 * k + 1) / ld(6 * k - 1); }

detail::AiryPairL asym_right(ld x)
{
    ld z = 2.0L / 3 * x * std::sqrt(x);
    ld su = 0, sv = 0, zk = 1, prev = INFINITY;
    for (int k = 0; k < 64; ++k) {
        ld tu = U()[k] / zk, tv = vcoef(k) / zk;
        ld mag = std::fabs(tu);
        if (mag > prev) break;
        prev = mag;
        ld sg = (k & 1) ? -1 : 1;
        su += sg * tu;
        sv += sg * tv;
        if (mag < 1e-22L) break;
        zk *= z;
    }
    ld e = std::exp(-z) / (2 * std::sqrt(kPi));
    ld x4 = std::sqrt(std::sqrt(x));
    return {e / x4 * su, -e * x4 * sv};
}

detail::AiryPairL asym_left(ld x)
{
    ld r = -x;
    ld z = 2.0L / 3 * r * std::sqrt(r);
    ld pe = 0, po = 0, qe = 0, qo = 0, zk = 1, prev = INFINITY;
    for (int k = 0; k < 64; ++k) {
        ld tu = U()[k] / zk, tv = vcoef(k) / zk;
        ld mag = std::fabs(tu);
        if (mag > prev) break;
        prev = mag;
        ld sg = ((k / 2) & 1) ? -1 : 1;
        if (k % 2 == 0) {
            pe += sg * tu;
            qe += sg * tv;
        } else {
            po += sg * tu;
            qo += sg * tv;
        }
        if (mag < 1e-22L) break;
        zk *= z;
    }
    ld th = z - kPi / 4;
    ld c = std::cos(th), s = std::sin(th);
    ld r4 = std::sqrt(std::sqrt(r));
    ld sp = std::sqrt(kPi);
    return {(c * pe + s * po) / (sp * r4), r4 / sp * (s * qe - c * qo)};
}

struct Anchors {
    std::vector<ld> ai, aip;
    double mismatch = 0;
    Anchors()
    {
        int m = int(std::lround((kGridHi - kGridLo) / kStep)) + 1;
        ai.resize(m);
        aip.resize(m);
        int i0 = int(std::lround(-kGridLo / kStep));
        ai[i0] = kAi0;
        aip[i0] = kAip0;
        for (int i = i0; i > 0; --i) {
            auto y = taylor(kGridLo + i * kStep, ai[i], aip[i], -kStep);
            ai[i - 1] = y.ai;
            aip[i - 1] = y.aip;
        }
        auto top = asym_right(kGridHi);
        ai[m - 1] = top.ai;
        aip[m - 1] = top.aip;
        for (int i = m - 1; i > i0 + 1; --i) {
            auto y = taylor(kGridLo + i * kStep, ai[i], aip[i], -kStep);
            ai[i - 1] = y.ai;
            aip[i - 1] = y.aip;
        }
        auto y = taylor(kGridLo + (i0 + 1) * kStep, ai[i0 + 1], aip[i0 + 1], -kStep);
        mismatch = double(std::fabs(y.ai - kAi0) + std::fabs(y.aip - kAip0));
    }
};

const Anchors& anchors()
{
    static const Anchors a;
    return a;
}

} // namespace

namespace detail {

AiryPairL airy_ld(long double x)
{
    if (x >= kGridHi) return asym_right(x);
    if (x <= kGridLo) return asym_left(x);
    const Anchors& A = anchors();
    int i = int(std::lround((double(x) - kGridLo) / kStep));
    ld x0 = kGridLo + i * kStep;
    return taylor(x0, A.ai[i], A.aip[i], x - x0);
}

double airy_anchor_mismatch() { return anchors().mismatch; }

} // namespace detail

static void check_range(double x)
{
    require(std::isfinite(x) && std::fabs(x) <= 50.0, Status::out_of_range,
            "Airy argument outside the working range |x| <= 50: " + std::to_string(x));
}

AiryPair airy(double x)
{
    check_range(x);
    auto y = detail::airy_ld(x);
    return {double(y.ai), double(y.aip)};
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

} // namespace softedge
