#include "painleve/painleve.hpp"

#include "airy/airy.hpp"
#include "core/error.hpp"
#include "fredholm/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace softedge {

namespace {

using LVec = std::vector<long double>;
using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Lobatto differentiation matrix on [a, b], node 0 at b.
LMat cheb_diff(int N, double a, double b)
{
    const long double pi = std::numbers::pi_v<long double>;
    LVec t(N + 1), c(N + 1);
    for (int j = 0; j <= N; ++j) {
        t[j] = std::cos(pi * j / N);
        c[j] = ((j == 0 || j == N) ? 2.0L : 1.0L) * ((j % 2) ? -1.0L : 1.0L);
    }
    LMat D(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) {
        long double diag = 0;
        for (int j = 0; j <= N; ++j) {
            if (i == j) continue;
            D(i, j) = (c[i] / c[j]) / (t[i] - t[j]);
            diag += D(i, j);
        }
        D(i, i) = -diag;
    }
    return D * (2.0L / ((long double)b - (long double)a));
}

// The unknown is w = q exp(g) with g a smooth stand-in for (2/3) s^{3/2} on
// the right, so that collocation errors are relative where q is tiny.
struct Weight {
    long double g, g1, g2;
};

Weight decay_weight(long double s)
{
    constexpr long double c2 = 16.0L;
    long double r = std::sqrt(s * s + c2);
    long double u = s >= 0 ? (s + r) / 2 : c2 / (2 * (r - s));
    long double u1 = u / r;
    long double u2 = c2 / (2 * r * r * r);
    long double su = std::sqrt(u);
    return {2.0L / 3.0L * u * su, su * u1, u1 * u1 / (2 * su) + su * u2};
}

struct Collocation {
    int N;
    double a, b;
    LVec s;
    LMat D, D2;
    std::vector<Weight> wt;
    LVec E; // exp(-g)
};

Collocation make_collocation(int N, double a, double b)
{
    Collocation c{N, a, b, {}, cheb_diff(N, a, b), {}, {}, {}};
    c.D2 = c.D * c.D;
    const long double pi = std::numbers::pi_v<long double>;
    c.s.resize(N + 1);
    c.wt.resize(N + 1);
    c.E.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
        c.s[j] = (long double)a + ((long double)b - a) * (std::cos(pi * j / N) + 1.0L) / 2.0L;
        c.wt[j] = decay_weight(c.s[j]);
        c.E[j] = std::exp(-c.wt[j].g);
    }
    return c;
}

struct Pins {
    bool hastings_mcleod;
    long double q_right, qp_right, q_left;
};

Eigen::Matrix<long double, Eigen::Dynamic, 1> residual_of(const Collocation& c, const Pins& pins,
                                                          const Eigen::Matrix<long double, Eigen::Dynamic, 1>& q)
{
    const int N = c.N;
    Eigen::Matrix<long double, Eigen::Dynamic, 1> d2 = c.D2 * q, d1 = c.D * q;
    Eigen::Matrix<long double, Eigen::Dynamic, 1> r(N + 1);
    r(0) = q(0) - pins.q_right;
    for (int i = 1; i < N; ++i) {
        const Weight& w = c.wt[i];
        long double e2 = c.E[i] * c.E[i];
        r(i) = d2(i) - 2 * w.g1 * d1(i) + (w.g1 * w.g1 - w.g2 - c.s[i]) * q(i) - 2.0L * e2 * q(i) * q(i) * q(i);
    }
    if (pins.hastings_mcleod)
        r(N) = q(N) - pins.q_left;
    else
        r(N) = c.D.row(0).dot(q) - pins.qp_right;
    return r;
}

long double interior_max(const Eigen::Matrix<long double, Eigen::Dynamic, 1>& r)
{
    long double m = 0;
    for (int i = 1; i + 1 < r.size(); ++i) m = std::max(m, std::fabs(r(i)));
    return m;
}

long double full_norm(const Eigen::Matrix<long double, Eigen::Dynamic, 1>& r)
{
    return r.cwiseAbs().maxCoeff();
}

struct NewtonResult {
    Eigen::Matrix<long double, Eigen::Dynamic, 1> q;
    long double residual;
    int iterations;
    bool converged;
};

NewtonResult newton(const Collocation& c, const Pins& pins, Eigen::Matrix<long double, Eigen::Dynamic, 1> q,
                    int max_it)
{
    const int N = c.N;
    auto r = residual_of(c, pins, q);
    long double norm = full_norm(r);
    int it = 0;
    for (; it < max_it && norm > 0; ++it) {
        LMat J = LMat::Zero(N + 1, N + 1);
        J(0, 0) = 1;
        for (int i = 1; i < N; ++i) {
            const Weight& w = c.wt[i];
            J.row(i) = c.D2.row(i) - 2 * w.g1 * c.D.row(i);
            J(i, i) += w.g1 * w.g1 - w.g2 - c.s[i] - 6.0L * c.E[i] * c.E[i] * q(i) * q(i);
        }
        if (pins.hastings_mcleod)
            J(N, N) = 1;
        else
            J.row(N) = c.D.row(0);
        Eigen::Matrix<long double, Eigen::Dynamic, 1> delta = J.partialPivLu().solve(-r);
        long double lambda = 1;
        bool accepted = false;
        for (int k = 0; k < 30; ++k) {
            auto trial = q + lambda * delta;
            auto rt = residual_of(c, pins, trial);
            long double nt = full_norm(rt);
            if (std::isfinite((double)nt) && nt < (1.0L - 1e-4L * lambda) * norm) {
                q = trial;
                r = rt;
                norm = nt;
                accepted = true;
                break;
            }
            lambda /= 2;
        }
        if (!accepted) {
            // rounding floor: a full step that does not increase the residual much is the best available
            if (norm < 1e-12L) break;
            return {q, interior_max(r), it, false};
        }
        if (delta.cwiseAbs().maxCoeff() * lambda < 1e-19L * (1 + q.cwiseAbs().maxCoeff())) {
            ++it;
            break;
        }
    }
    return {q, interior_max(r), it, norm < 1e-9L};
}

// pins in the w variable
Pins pins_for(double xi, double a, double b)
{
    auto rb = detail::airy_ld(b);
    long double sx = std::sqrt((long double)xi);
    Weight wb = decay_weight(b), wa = decay_weight(a);
    long double eb = std::exp(wb.g);
    long double wr = sx * rb.ai * eb;
    return {xi >= 1.0, wr, sx * rb.aip * eb + wb.g1 * wr, std::sqrt(-(long double)a / 2.0L) * std::exp(wa.g)};
}

Eigen::Matrix<long double, Eigen::Dynamic, 1> initial_guess(const Collocation& c, double xi)
{
    Eigen::Matrix<long double, Eigen::Dynamic, 1> q(c.N + 1);
    long double sx = std::sqrt((long double)xi);
    for (int i = 0; i <= c.N; ++i) {
        long double ai = detail::airy_ld(c.s[i]).ai;
        if (xi >= 1.0)
            q(i) = std::sqrt(ai * ai + std::max(-c.s[i], 0.0L) / 2.0L);
        else
            q(i) = sx * ai;
        q(i) /= c.E[i];
    }
    return q;
}

double airy_tail_integral(double b)
{
    // Ai decays like exp(-2/3 b^{3/2}); 40 units are far beyond double range
    auto rule = composite_gauss<long double>(b, b + 40.0, 8, 30);
    long double acc = 0;
    for (size_t i = 0; i < rule.x.size(); ++i) acc += rule.w[i] * detail::airy_ld(rule.x[i]).ai;
    return (double)acc;
}

// integral of K_Ai(x, x) over (b, inf)
long double airy_trace(double b)
{
    auto r = detail::airy_ld(b);
    long double s = b;
    return (2 * s * s * r.ai * r.ai - 2 * s * r.aip * r.aip - r.ai * r.aip) / 3.0L;
}

} // namespace

double PIISolution::q_at(double s) const
{
    require(s >= L_minus * -1 - 1e-12 && s <= L_plus + 1e-12, Status::out_of_range, "solve_q: s outside window");
    return q(s);
}

double PIISolution::qp_at(double s) const
{
    require(s >= L_minus * -1 - 1e-12 && s <= L_plus + 1e-12, Status::out_of_range, "solve_q: s outside window");
    return qp(s);
}

PIISolution solve_q(double xi, const PIIOptions& opt)
{
    require(xi > 0 && xi <= 1, Status::invalid_argument, "solve_q: xi must lie in (0, 1]");
    require(opt.L_plus >= 6, Status::invalid_argument, "solve_q: L_plus must be at least 6");
    require(opt.L_minus > 0 && opt.L_minus <= 10, Status::invalid_argument, "solve_q: L_minus must lie in (0, 10]");
    require(opt.degree >= 16 && opt.degree <= 600, Status::invalid_argument, "solve_q: degree out of range");
    require(std::fabs(opt.L_plus) <= 40, Status::invalid_argument, "solve_q: L_plus must be at most 40");

    const double a = -opt.L_minus, b = opt.L_plus;
    const Collocation c = make_collocation(opt.degree, a, b);

    NewtonResult res = newton(c, pins_for(xi, a, b), initial_guess(c, xi), opt.max_iterations);
    if (!res.converged) {
        // continuation in xi from a small value where the linear guess is accurate
        const int steps = 16;
        Eigen::Matrix<long double, Eigen::Dynamic, 1> q = initial_guess(c, xi / steps);
        double prev = xi / steps;
        int total = 0;
        for (int k = 1; k <= steps; ++k) {
            double x = xi * k / steps;
            if (x < 1.0 && prev > 0) q *= std::sqrt((long double)x / prev);
            res = newton(c, pins_for(x, a, b), q, opt.max_iterations);
            total += res.iterations;
            if (!res.converged)
                fail(Status::not_converged, "solve_q: Newton failed during continuation at xi = " + std::to_string(x) +
                                                " (residual " + std::to_string((double)res.residual) + ")");
            q = res.q;
            prev = x;
        }
        res.iterations = total;
    }
    if (res.residual > 1e-9L)
        fail(Status::not_converged,
             "solve_q: collocation residual " + std::to_string((double)res.residual) + " exceeds 1e-9");

    PIISolution sol;
    sol.xi = xi;
    sol.L_minus = opt.L_minus;
    sol.L_plus = opt.L_plus;
    sol.residual = (double)res.residual;
    sol.iterations = res.iterations;
    const int N = c.N;
    Eigen::Matrix<long double, Eigen::Dynamic, 1> wp = c.D * res.q;
    LVec qv(N + 1), qpv(N + 1), u(N + 1);
    sol.grid.resize(N + 1);
    sol.q_values.resize(N + 1);
    sol.q_prime_values.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        qv[i] = c.E[i] * res.q(i);
        qpv[i] = c.E[i] * (wp(i) - c.wt[i].g1 * res.q(i));
        u[i] = qpv[i] * qpv[i] - c.s[i] * qv[i] * qv[i] - qv[i] * qv[i] * qv[i] * qv[i];
        sol.grid[i] = (double)c.s[i];
        sol.q_values[i] = (double)qv[i];
        sol.q_prime_values[i] = (double)qpv[i];
    }
    sol.q = ChebSeries::from_values(a, b, qv);
    sol.qp = ChebSeries::from_values(a, b, qpv);
    sol.int_q = sol.q.integral();
    sol.int_u00 = ChebSeries::from_values(a, b, u).integral();
    sol.right_tail_q = std::sqrt(xi) * airy_tail_integral(b);
    sol.log_F2_right = (double)(-(long double)xi * airy_trace(b));
    return sol;
}

double F_via_painleve(const PIISolution& sol, PTarget target, double s)
{
    require(s >= -sol.L_minus - 1e-12 && s <= sol.L_plus + 1e-12, Status::out_of_range,
            "F_via_painleve: s outside the solution window");
    const double b = sol.L_plus;
    double logF2 = sol.log_F2_right - (sol.int_u00(b) - sol.int_u00(s));
    if (target == PTarget::F2) return std::exp(logF2);
    double iq = sol.int_q(b) - sol.int_q(s) + sol.right_tail_q;
    double sign = target == PTarget::Fplus ? -1.0 : 1.0;
    return std::exp(0.5 * logF2 + sign * 0.5 * iq);
}

double F_via_painleve(PTarget target, double s, double xi)
{
    require(xi >= 0 && xi <= 1, Status::invalid_argument, "F_via_painleve: xi must lie in [0, 1]");
    if (xi == 0) return 1.0;
    static std::mutex mu;
    static std::map<double, PIISolution> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(xi);
    if (it == cache.end()) {
        if (cache.size() >= 64) cache.clear();
        it = cache.emplace(xi, solve_q(xi)).first;
    }
    return F_via_painleve(it->second, target, s);
}

namespace {

// One Taylor step of q'' = s q + 2 q^3 from (s0, q0, p0) with step h.
// Returns the new state and the integral of q over the step.
struct TaylorState {
    long double s, q, p;
};

long double taylor_step(TaylorState& st, long double h_max, long double& h_out)
{
    constexpr int K = 36;
    long double a[K + 1], sq[K + 1], cu[K + 1];
    a[0] = st.q;
    a[1] = st.p;
    for (int k = 0; k + 2 <= K; ++k) {
        sq[k] = 0;
        for (int i = 0; i <= k; ++i) sq[k] += a[i] * a[k - i];
        cu[k] = 0;
        for (int i = 0; i <= k; ++i) cu[k] += sq[i] * a[k - i];
        long double prev = k >= 1 ? a[k - 1] : 0.0L;
        a[k + 2] = (st.s * a[k] + prev + 2.0L * cu[k]) / ((k + 2.0L) * (k + 1.0L));
    }
    long double scale = std::fabs(st.q) + std::fabs(st.p) + 1e-300L;
    long double h = std::fabs(h_max);
    for (int k = K - 1; k <= K; ++k) {
        if (a[k] == 0) continue;
        long double hk = 0.8L * std::pow(1e-19L * scale / std::fabs(a[k]), 1.0L / k);
        h = std::min(h, hk);
    }
    h = std::copysign(h, h_max);
    long double q = 0, p = 0, iq = 0, hp = 1;
    for (int k = 0; k <= K; ++k) {
        q += a[k] * hp;
        if (k >= 1) p += k * a[k] * hp / h;
        iq += a[k] * hp * h / (k + 1);
        hp *= h;
    }
    st.s += h;
    st.q = q;
    st.p = p;
    h_out = h;
    return iq;
}

} // namespace

namespace {

struct LeftTail {
    long double continuation = 0, remainder = 0, error = 0;
};

LeftTail continue_left(const PIISolution& sol, double s_from, double far_left)
{
    require(sol.xi < 1.0, Status::invalid_argument, "left_tail_integral: requires xi < 1");
    require(s_from >= -sol.L_minus - 1e-12 && s_from <= sol.L_plus, Status::out_of_range,
            "left_tail_integral: start outside window");
    require(far_left < s_from, Status::invalid_argument, "left_tail_integral: far_left must lie left of start");
    TaylorState st{s_from, sol.q(s_from), sol.qp(s_from)};
    LeftTail out;
    long double amp = 0;
    while (st.s > far_left) {
        long double h;
        long double remaining = (long double)far_left - st.s;
        out.continuation -= taylor_step(st, std::max(remaining, -0.5L), h);
        if (st.s < far_left + 40) amp = std::max(amp, std::fabs(st.q) * std::pow(-st.s, 0.25L));
        if (!std::isfinite((double)st.q)) fail(Status::not_converged, "left_tail_integral: continuation diverged");
    }
    // int_{-inf}^{S} q by parts on the oscillatory asymptote
    long double S = st.s;
    out.remainder = st.p / S + st.q / (S * S);
    out.error = 1.5L * amp * amp * amp * std::pow(-S, -2.25L) + 2.0L * amp * std::pow(-S, -3.75L);
    return out;
}

} // namespace

double left_tail_integral(const PIISolution& sol, double s_from, double far_left, double* error_bound)
{
    LeftTail t = continue_left(sol, s_from, far_left);
    if (error_bound) *error_bound = (double)t.error;
    return (double)(t.continuation + t.remainder);
}

TotalIntegral total_integral(double xi, double far_left, double tail_tolerance)
{
    require(xi > 0 && xi < 1, Status::invalid_argument, "total_integral: xi must lie in (0, 1)");
    require(far_left <= -20, Status::invalid_argument, "total_integral: far_left must be at most -20");
    PIISolution sol = solve_q(xi);
    TotalIntegral r;
    r.window = sol.int_q(sol.L_plus);
    r.right_tail = sol.right_tail_q;
    r.far_left = far_left;
    LeftTail t = continue_left(sol, -sol.L_minus, far_left);
    r.continuation = (double)t.continuation;
    r.left_remainder = (double)t.remainder;
    r.tail_error = (double)t.error;
    r.value = (double)((long double)r.window + r.right_tail + t.continuation + t.remainder);
    r.reference = std::atanh(std::sqrt(xi));
    if (r.tail_error > tail_tolerance)
        fail(Status::not_converged, "total_integral: left tail estimate " + std::to_string(r.tail_error) +
                                        " exceeds tolerance");
    return r;
}

} // namespace softedge
