#include "softedge/softedge.h"

#include "airy/airy.hpp"
#include "airy/wave.hpp"
#include "core/ensemble.hpp"
#include "expansion/derive.hpp"
#include "expansion/expansion.hpp"
#include "finiten/finiten.hpp"
#include "fredholm/chebyshev.hpp"
#include "fredholm/limit.hpp"
#include "mc/mc.hpp"
#include "painleve/painleve.hpp"
#include "validate/validate.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstring>
#include <iostream>
#include <new>
#include <string>

using json = nlohmann::json;
using namespace softedge;

struct se_pii {
    PIISolution sol;
};
struct se_table {
    CoefficientTable table;
};
struct se_batch {
    SampleBatch batch;
};

namespace {

thread_local std::string g_error;

template <class F>
se_status guard(F&& f)
{
    try {
        f();
        g_error.clear();
        return SE_OK;
    } catch (const Error& e) {
        g_error = e.what();
        return se_status(int(e.status()));
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return SE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return SE_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what)
{
    if (!p) fail(Status::invalid_argument, std::string("null pointer: ") + what);
}

EnsembleSpec to_spec(const se_ensemble* e)
{
    need(e, "ensemble");
    require(e->family == SE_GAUSSIAN || e->family == SE_LAGUERRE, Status::invalid_argument, "unknown family");
    EnsembleSpec s{e->family == SE_GAUSSIAN ? Family::Gaussian : Family::Laguerre, e->beta, e->n, e->p};
    validate(s);
    return s;
}

void put_scaling(const ScalingParams& p, se_scaling* out)
{
    need(out, "out");
    *out = {p.mu, p.sigma, p.h, p.tau, p.n_prime};
}

InducedOp to_op(const se_induced* op)
{
    if (!op) return InducedOp::generating(1.0);
    require(op->nterms >= 1 && op->orders && op->weights, Status::invalid_argument, "induced functional needs terms");
    InducedOp r;
    r.xi_star = op->xi_star;
    for (int i = 0; i < op->nterms; ++i) {
        require(op->orders[i] >= 0 && op->orders[i] <= 12, Status::invalid_argument, "derivative order out of range");
        r.terms.push_back({op->orders[i], op->weights[i]});
    }
    return r;
}

const CoefficientTable& table_of(const se_table* t) { return t ? t->table : default_table(); }

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void put_string(char** out, const std::string& s)
{
    if (out) *out = dup(s);
}

json table_summary(const CoefficientTable& t)
{
    json rows = json::array();
    for (const auto& [key, e] : t.entries())
        rows.push_back({{"beta", std::get<0>(key)},
                        {"j", std::get<1>(key)},
                        {"k", std::get<2>(key)},
                        {"poly", e.poly.str()},
                        {"provenance", provenance_name(e.provenance)},
                        {"certificate", e.certificate}});
    return rows;
}

} // namespace

extern "C" {

const char* se_last_error(void) { return g_error.c_str(); }

const char* se_status_name(se_status st) { return status_name(Status(int(st))); }

const char* se_version(void) { return "0.1.0 (" SOFTEDGE_COMMIT ")"; }

void se_string_free(char* s) { std::free(s); }

se_status se_n_prime(int beta, double n, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = n_prime(beta, n);
    });
}

se_status se_scaling_at(int family, double nu, double p_nu, se_scaling* out)
{
    return guard([&] {
        require(family == SE_GAUSSIAN || family == SE_LAGUERRE, Status::invalid_argument, "unknown family");
        put_scaling(scaling(family == SE_GAUSSIAN ? Family::Gaussian : Family::Laguerre, nu, p_nu), out);
    });
}

se_status se_expansion_frame(const se_ensemble* spec, se_scaling* out)
{
    return guard([&] { put_scaling(expansion_frame(to_spec(spec)), out); });
}

se_status se_plain_frame(const se_ensemble* spec, se_scaling* out)
{
    return guard([&] { put_scaling(plain_frame(to_spec(spec)), out); });
}

se_status se_airy(double x, double* ai, double* ai_prime)
{
    return guard([&] {
        AiryPair a = airy(x);
        if (ai) *ai = a.ai;
        if (ai_prime) *ai_prime = a.aip;
    });
}

se_status se_wave(int family, double alpha, int j, double x, double* out)
{
    return guard([&] {
        need(out, "out");
        require(family == SE_GAUSSIAN || family == SE_LAGUERRE, Status::invalid_argument, "unknown family");
        WaveFunctionFamily f{family == SE_GAUSSIAN ? WaveKind::Hermite : WaveKind::Laguerre, alpha, j};
        *out = wave(f, j, x);
    });
}

se_status se_limit_F(int beta, double s, double xi, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = limit_F(beta, s, xi);
    });
}

se_status se_F_pm(int sign, double s, double xi, double* out)
{
    return guard([&] {
        need(out, "out");
        require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
        *out = F_pm(sign, s, xi);
    });
}

se_status se_limit_jet(int beta, double s, double xi_star, int order, double* coeffs)
{
    return guard([&] {
        need(coeffs, "coeffs");
        require(order >= 0 && order <= 12, Status::invalid_argument, "jet order must lie in 0..12");
        XiJet j = limit_F_jet(beta, s, xi_star, order);
        for (int k = 0; k <= order; ++k) coeffs[k] = j[k];
    });
}

se_status se_kth_largest_limit_cdf(int beta, int k, double s, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = kth_largest_limit_cdf(beta, k, s);
    });
}

se_status se_induced_limit(int beta, double s, const se_induced* op, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = induced_limit(beta, s, to_op(op));
    });
}

se_status se_limit_s_derivatives(int beta, double xi, double s0, int kmax, double* out)
{
    return guard([&] {
        need(out, "out");
        check_window(s0);
        SDerivOptions o;
        o.lo = kWindowLo;
        o.hi = kWindowHi;
        o.noise = 1e-15;
        auto d = s_derivatives([&](double s) { return limit_F(beta, s, xi); }, s0, kmax, o);
        for (int k = 0; k <= kmax; ++k) out[k] = d[k];
    });
}

se_status se_pii_solve(double xi, double L_minus, double L_plus, se_pii** out)
{
    return guard([&] {
        need(out, "out");
        PIIOptions o;
        if (L_minus > 0) o.L_minus = L_minus;
        if (L_plus > 0) o.L_plus = L_plus;
        *out = new se_pii{solve_q(xi, o)};
    });
}

void se_pii_free(se_pii* sol) { delete sol; }

se_status se_pii_q(const se_pii* sol, double s, double* q, double* q_prime)
{
    return guard([&] {
        need(sol, "solution");
        if (q) *q = sol->sol.q_at(s);
        if (q_prime) *q_prime = sol->sol.qp_at(s);
    });
}

se_status se_pii_F(const se_pii* sol, int target, double s, double* out)
{
    return guard([&] {
        need(sol, "solution");
        need(out, "out");
        require(target >= 0 && target <= 2, Status::invalid_argument, "unknown target");
        *out = F_via_painleve(sol->sol, PTarget(target), s);
    });
}

se_status se_pii_info(const se_pii* sol, double* residual, int* iterations, double* L_minus, double* L_plus)
{
    return guard([&] {
        need(sol, "solution");
        if (residual) *residual = sol->sol.residual;
        if (iterations) *iterations = sol->sol.iterations;
        if (L_minus) *L_minus = sol->sol.L_minus;
        if (L_plus) *L_plus = sol->sol.L_plus;
    });
}

se_status se_total_integral(double xi, double* value, double* reference, double* tail_error)
{
    return guard([&] {
        TotalIntegral t = total_integral(xi);
        if (value) *value = t.value;
        if (reference) *reference = t.reference;
        if (tail_error) *tail_error = t.tail_error;
    });
}

se_status se_E2n(const se_ensemble* spec, double x, double xi, double* out)
{
    return guard([&] {
        need(out, "out");
        EnsembleSpec s = to_spec(spec);
        require(s.beta == 2, Status::invalid_argument, "exact finite-n values need beta = 2");
        *out = E2n(s, x, xi);
    });
}

se_status se_E2n_jet(const se_ensemble* spec, double x, double xi_star, int order, double* coeffs)
{
    return guard([&] {
        need(coeffs, "coeffs");
        EnsembleSpec s = to_spec(spec);
        require(s.beta == 2, Status::invalid_argument, "exact finite-n values need beta = 2");
        require(order >= 0, Status::invalid_argument, "negative jet order");
        XiJet j = E2n_jet(gram(s, x), xi_star, order);
        for (int k = 0; k <= order; ++k) coeffs[k] = j[k];
    });
}

se_status se_gap_probabilities(const se_ensemble* spec, double x, double* out)
{
    return guard([&] {
        need(out, "out");
        EnsembleSpec s = to_spec(spec);
        require(s.beta == 2, Status::invalid_argument, "exact finite-n values need beta = 2");
        auto g = gap_probabilities(gram(s, x));
        std::copy(g.begin(), g.end(), out);
    });
}

se_status se_kth_largest_finite_cdf(const se_ensemble* spec, int k, double x, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = kth_largest_finite_cdf(to_spec(spec), k, x);
    });
}

se_status se_table_default(se_table** out)
{
    return guard([&] {
        need(out, "out");
        *out = new se_table{default_table()};
    });
}

se_status se_table_load(const char* path, se_table** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new se_table{load_table(path)};
    });
}

se_status se_table_parse(const char* text, se_table** out)
{
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = new se_table{parse_table(text)};
    });
}

se_status se_table_save(const se_table* t, const char* path)
{
    return guard([&] {
        need(t, "table");
        need(path, "path");
        save_table(t->table, path);
    });
}

se_status se_table_format(const se_table* t, char** text)
{
    return guard([&] {
        need(text, "text");
        *text = dup(format_table(table_of(t)));
    });
}

void se_table_free(se_table* t) { delete t; }

se_status se_table_max_order(const se_table* t, int beta, int* out)
{
    return guard([&] {
        need(out, "out");
        *out = table_of(t).max_order(beta);
    });
}

se_status se_table_entry(const se_table* t, int beta, int j, int k, char** poly, char** provenance,
                         char** certificate)
{
    return guard([&] {
        const TableEntry& e = table_of(t).at(beta, j, k);
        put_string(poly, e.poly.str());
        put_string(provenance, provenance_name(e.provenance));
        put_string(certificate, e.certificate);
    });
}

se_status se_table_eval(const se_table* t, int beta, int j, int k, double s, double tau, double* out)
{
    return guard([&] {
        need(out, "out");
        *out = eval_st(table_of(t).at(beta, j, k).poly, s, tau);
    });
}

se_status se_expand(const se_table* t, const se_ensemble* spec, double s, const se_induced* op, int m, double* value,
                    double* orders)
{
    return guard([&] {
        ExpansionValue v = evaluate({to_spec(spec), s, to_op(op), m}, table_of(t));
        if (value) *value = v.value;
        if (orders) std::copy(v.orders.begin(), v.orders.end(), orders);
    });
}

se_status se_expand_grid(const se_table* t, const se_ensemble* spec, const se_induced* op, int m, const double* s,
                         int count, double* values, double* density)
{
    return guard([&] {
        need(s, "s");
        need(values, "values");
        require(count >= 1, Status::invalid_argument, "empty grid");
        ExpansionGrid g = evaluate_grid(to_spec(spec), to_op(op), m, std::vector<double>(s, s + count), table_of(t));
        for (int r = 0; r <= m; ++r)
            for (int i = 0; i < count; ++i) {
                values[size_t(r) * count + i] = g.value[r][i];
                if (density) density[size_t(r) * count + i] = g.density[r][i];
            }
    });
}

se_status se_derive(const se_derive_options* opt, se_table** out, char** report)
{
    return guard([&] {
        need(out, "out");
        DeriveOptions d;
        if (opt) {
            if (opt->ladder_first > 0) d.ladder_first = opt->ladder_first;
            if (opt->ladder_steps > 0) d.ladder_steps = opt->ladder_steps;
            if (!opt->include_laguerre) d.ratios.clear();
            d.workers = opt->workers;
            if (opt->verbose) d.log = [](const std::string& m) { std::cerr << m << std::endl; };
        }
        DeriveReport rep = derive_table(d);
        if (report) {
            json j;
            j["xi"] = d.xis;
            j["tau"] = rep.taus;
            j["xi_consistent"] = rep.xi_consistent;
            j["rounded"] = rep.rounded;
            json orders = json::array();
            for (size_t x = 0; x < rep.rec.size(); ++x)
                for (size_t o = 0; o < rep.rec[x].size(); ++o) {
                    const Reconstruction& r = rep.rec[x][o];
                    json row = json::array();
                    for (auto& p : r.row) row.push_back(p.str());
                    orders.push_back({{"xi", d.xis[x]},
                                      {"j", o + 1},
                                      {"rounded", r.rounded},
                                      {"certificate", r.certificate},
                                      {"raw_residual", r.raw_residual},
                                      {"row", row}});
                }
            j["reconstructions"] = orders;
            *report = dup(j.dump(2));
        }
        *out = new se_table{std::move(rep.table)};
    });
}

se_status se_sample(const se_ensemble* spec, int count, uint64_t seed, int workers, se_batch** out)
{
    return guard([&] {
        need(out, "out");
        *out = new se_batch{sample(to_spec(spec), count, seed, workers)};
    });
}

void se_batch_free(se_batch* b) { delete b; }

se_status se_batch_levels(const se_batch* b, const double** levels, int* count, int* n)
{
    return guard([&] {
        need(b, "batch");
        if (levels) *levels = b->batch.levels.data();
        if (count) *count = b->batch.count;
        if (n) *n = b->batch.spec.n;
    });
}

se_status se_batch_write_csv(const se_batch* b, const char* path)
{
    return guard([&] {
        need(b, "batch");
        need(path, "path");
        write_csv(b->batch, path);
    });
}

se_status se_batch_write_binary(const se_batch* b, const char* path)
{
    return guard([&] {
        need(b, "batch");
        need(path, "path");
        write_binary(b->batch, path);
    });
}

se_status se_batch_read_binary(const char* path, se_batch** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new se_batch{read_binary(path)};
    });
}

se_status se_ks_two_sample(const double* a, size_t na, const double* b, size_t nb, double* statistic, double* p_value)
{
    return guard([&] {
        require((a || !na) && (b || !nb), Status::invalid_argument, "null sample");
        auto r = ks_two_sample(std::vector<double>(a, a + na), std::vector<double>(b, b + nb));
        if (statistic) *statistic = r.statistic;
        if (p_value) *p_value = r.p_value;
    });
}

se_status se_decimation_check(int n, int count, uint64_t seed, int workers, char** report)
{
    return guard([&] {
        need(report, "report");
        CheckReport r = superposition_decimation_check(n, count, seed, workers);
        json items = json::array();
        for (auto& it : r.items)
            items.push_back({{"name", it.name}, {"statistic", it.statistic}, {"p_value", it.p_value}, {"pass", it.pass}});
        *report = dup(json{{"n", n}, {"count", count}, {"seed", seed}, {"pass", r.pass()}, {"items", items}}.dump(2));
    });
}

se_status se_thinning_check(const se_ensemble* spec, double xi, const double* x, int nx, int count, uint64_t seed,
                            int workers, const se_table* t, char** report)
{
    return guard([&] {
        need(report, "report");
        need(x, "x");
        ThinningReport r =
            thinning_check(to_spec(spec), xi, std::vector<double>(x, x + nx), count, seed, workers, table_of(t));
        json rows = json::array();
        for (auto& row : r.rows)
            rows.push_back({{"x", row.x}, {"empirical", row.empirical}, {"reference", row.reference},
                            {"std_error", row.std_error}});
        *report = dup(json{{"xi", xi},
                           {"count", count},
                           {"seed", seed},
                           {"reference", r.reference_kind},
                           {"max_z", r.max_z},
                           {"rows", rows}}
                          .dump(2));
    });
}

se_status se_figure1(const se_ensemble* spec, int rank, int m_max, int count, uint64_t seed, int workers,
                     const se_table* t, char** report)
{
    return guard([&] {
        need(report, "report");
        Figure1Report r = figure1_harness(to_spec(spec), rank, m_max, count, seed, workers, table_of(t));
        *report = dup(json{{"rank", r.rank},
                           {"count", count},
                           {"seed", seed},
                           {"mu", r.frame.mu},
                           {"sigma", r.frame.sigma},
                           {"h", r.frame.h},
                           {"edges", r.edges},
                           {"hist", r.hist},
                           {"noise", r.noise},
                           {"model", r.model},
                           {"distance", r.distance},
                           {"noise_floor", r.noise_floor},
                           {"monotone", r.monotone}}
                          .dump(2));
    });
}

int se_criteria_count(void) { return kCriteria; }

se_status se_validate_criterion(int id, uint64_t seed, int workers, int rederive, const se_table* t, int* pass,
                                char** report)
{
    return guard([&] {
        require(id >= 1 && id <= kCriteria, Status::out_of_range, "no such criterion");
        ValidationOptions o;
        if (seed) o.seed = seed;
        o.workers = workers;
        o.rederive = rederive != 0;
        o.table = t ? &t->table : nullptr;
        CriterionResult r = run_criterion(id, o);
        if (pass) *pass = r.pass ? 1 : 0;
        if (report)
            *report = dup(json{{"id", r.id},
                               {"name", r.name},
                               {"pass", r.pass},
                               {"detail", r.detail},
                               {"seconds", r.seconds}}
                              .dump());
    });
}

} // extern "C"
