#include "airy/wave.hpp"

#include "core/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace softedge {

namespace {

// next = (a_j x + c_j) cur - b_j prev
template <class T>
struct RecurrenceTable {
    WaveKind kind = WaveKind::Hermite;
    double alpha = -2;
    std::vector<T> a, b, c;
};

template <class T>
const RecurrenceTable<T>& recurrence(const WaveFunctionFamily& fam, int hi)
{
    thread_local RecurrenceTable<T> tab;
    if (tab.kind != fam.kind || tab.alpha != fam.alpha || int(tab.a.size()) < hi) {
        tab.kind = fam.kind;
        tab.alpha = fam.alpha;
        int size = std::max(hi, int(tab.a.size()));
        tab.a.resize(size);
        tab.b.resize(size);
        tab.c.resize(size);
        T alpha = T(fam.alpha);
        for (int j = 0; j < size; ++j) {
            if (fam.kind == WaveKind::Hermite) {
                tab.a[j] = std::sqrt(T(2) / (j + 1));
                tab.b[j] = std::sqrt(T(j) / (j + 1));
                tab.c[j] = 0;
            } else {
                T d = std::sqrt((j + 1) * (j + 1 + alpha));
                tab.a[j] = 1 / d;
                tab.b[j] = std::sqrt(j * (j + alpha)) / d;
                tab.c[j] = -(2 * j + alpha + 1) / d;
            }
        }
    }
    return tab;
}

} // namespace

template <class T>
void wave_block(const WaveFunctionFamily& fam, T x, int lo, int hi, T* out)
{
    require(0 <= lo && lo <= hi && hi <= fam.max_degree, Status::out_of_range,
            "wave function degree outside [0, max_degree]");
    const T big = T(1e100), small = T(1e-100), lbig = std::log(big);
    T logscale, prev = 0, cur = 1;
    bool laguerre = fam.kind == WaveKind::Laguerre;
    T alpha = T(fam.alpha);
    if (!laguerre) {
        logscale = -x * x / 2 - std::log(T(3.141592653589793238462643383279502884L)) / 4;
    } else {
        require(alpha > -1, Status::invalid_argument, "Laguerre alpha must exceed -1");
        require(x >= 0, Status::out_of_range, "Laguerre wave functions live on x >= 0");
        if (x == 0) {
            require(alpha >= 0, Status::out_of_range, "wave function singular at x = 0");
            if (alpha > 0) {
                for (int j = lo; j <= hi; ++j) out[j - lo] = 0;
                return;
            }
            logscale = 0;
        } else {
            logscale = alpha / 2 * std::log(x) - x / 2 - std::lgamma(alpha + 1) / 2;
        }
    }
    const RecurrenceTable<T>& tab = recurrence<T>(fam, hi);
    T factor = std::exp(logscale);
    bool stale = false;
    for (int j = 0;; ++j) {
        if (j >= lo) {
            if (stale) {
                factor = std::exp(logscale);
                stale = false;
            }
            out[j - lo] = cur * factor;
        }
        if (j == hi) break;
        T next = (tab.a[j] * x + tab.c[j]) * cur - tab.b[j] * prev;
        prev = cur;
        cur = next;
        T a = std::fabs(cur);
        if (a > big) {
            cur /= big;
            prev /= big;
            logscale += lbig;
            stale = true;
        } else if (a < small && a > 0 && std::fabs(prev) < small) {
            cur *= big;
            prev *= big;
            logscale -= lbig;
            stale = true;
        }
    }
}

template void wave_block<double>(const WaveFunctionFamily&, double, int, int, double*);
template void wave_block<long double>(const WaveFunctionFamily&, long double, int, int,
                                      long double*);

double wave(const WaveFunctionFamily& fam, int j, double x)
{
    double v;
    wave_block<double>(fam, x, j, j, &v);
    return v;
}

} // namespace softedge
