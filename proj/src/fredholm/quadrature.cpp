#include "fredholm/quadrature.hpp"

#include "core/error.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace softedge {

namespace {

using ld = long double;

QuadRule<ld> build_gl(int m)
{
    const ld pi = 3.141592653589793238462643383279502884L;
    QuadRule<ld> r;
    r.x.resize(m);
    r.w.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        ld z = std::cos(pi * (i + 0.75L) / (m + 0.5L));
        ld dp = 0;
        for (int it = 0; it < 100; ++it) {
            ld p0 = 1, p1 = 0;
            for (int k = 1; k <= m; ++k) {
                ld p2 = p1;
                p1 = p0;
                p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
            }
            dp = m * (z * p0 - p1) / (z * z - 1);
            ld dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-21L) break;
        }
        // refresh derivative at the converged node
        ld p0 = 1, p1 = 0;
        for (int k = 1; k <= m; ++k) {
            ld p2 = p1;
            p1 = p0;
            p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
        }
        dp = m * (z * p0 - p1) / (z * z - 1);
        ld w = 2 / ((1 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[m - 1 - i] = z;
        r.w[i] = r.w[m - 1 - i] = w;
    }
    if (m % 2 == 1) r.x[m / 2] = 0;
    return r;
}

template <class T>
struct Cache {
    std::mutex mu;
    std::map<int, std::unique_ptr<QuadRule<T>>> rules;
};

} // namespace

template <class T>
const QuadRule<T>& gauss_legendre(int m)
{
    require(m >= 1, Status::invalid_argument, "quadrature order must be positive");
    static Cache<T> cache;
    std::lock_guard<std::mutex> lock(cache.mu);
    auto& slot = cache.rules[m];
    if (!slot) {
        QuadRule<ld> r = build_gl(m);
        slot = std::make_unique<QuadRule<T>>();
        slot->x.assign(r.x.begin(), r.x.end());
        slot->w.assign(r.w.begin(), r.w.end());
    }
    return *slot;
}

template <class T>
QuadRule<T> composite_gauss(T a, T b, int panels, int m)
{
    require(panels >= 1, Status::invalid_argument, "need at least one panel");
    const QuadRule<T>& g = gauss_legendre<T>(m);
    QuadRule<T> r;
    r.x.reserve(size_t(panels) * m);
    r.w.reserve(size_t(panels) * m);
    T h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        T lo = a + p * h;
        for (int i = 0; i < m; ++i) {
            r.x.push_back(lo + h * (g.x[i] + 1) / 2);
            r.w.push_back(h * g.w[i] / 2);
        }
    }
    return r;
}

template const QuadRule<double>& gauss_legendre<double>(int);
template const QuadRule<long double>& gauss_legendre<long double>(int);
template QuadRule<double> composite_gauss<double>(double, double, int, int);
template QuadRule<long double> composite_gauss<long double>(long double, long double, int, int);

} // namespace softedge
