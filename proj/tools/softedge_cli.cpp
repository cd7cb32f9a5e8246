#include "softedge/softedge.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

// Thrown on any failed C call; carries the status for the exit record.
struct CallError {
    se_status status;
    std::string message;
};

void check(se_status st)
{
    if (st != SE_OK) throw CallError{st, se_last_error()};
}

struct Owned {
    char* p = nullptr;
    ~Owned() { se_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct TableHandle {
    se_table* t = nullptr;
    ~TableHandle() { se_table_free(t); }
};

// Shared option block; each subcommand binds what it needs.
struct Config {
    std::string command;
    bool laguerre = false;
    int beta = 2;
    int n = 10;
    double p = 0;
    double xi = 1.0;
    int rank = 0; // k-th largest level, 1 = largest; 0 = generating function
    int m = 0;
    std::string grid = "-6:4:0.1";
    std::string x_grid;
    std::string format = "csv";
    std::string output;
    std::string table_path;
    std::uint64_t seed = 20240611;
    int count = 100000;
    int workers = 0;
    bool pm = false;
    bool total = false;
    // derive
    int ladder_first = 100, ladder_steps = 13;
    bool gaussian_only = false;
    // mc
    std::string mc_mode = "sample";
    std::string sample_format = "csv";
    // validate
    std::vector<int> only;
    bool quick = false;
};

json config_json(const Config& c)
{
    json j{{"command", c.command}, {"format", c.format}};
    auto ensemble = [&] {
        j["family"] = c.laguerre ? "laguerre" : "gaussian";
        j["beta"] = c.beta;
        j["n"] = c.n;
        if (c.laguerre) j["p"] = c.p;
    };
    if (c.command == "limit") {
        j["beta"] = c.beta;
        j["xi"] = c.xi;
        j["k"] = c.rank;
        j["grid"] = c.grid;
        j["pm"] = c.pm;
    } else if (c.command == "finite" || c.command == "expand") {
        ensemble();
        j["xi"] = c.xi;
        j["k"] = c.rank;
        j["grid"] = c.grid;
        if (c.command == "expand") j["m"] = c.m;
        if (!c.x_grid.empty()) j["x_grid"] = c.x_grid;
    } else if (c.command == "painleve") {
        j["xi"] = c.xi;
        j["grid"] = c.grid;
        j["total"] = c.total;
    } else if (c.command == "derive") {
        j["ladder_first"] = c.ladder_first;
        j["ladder_steps"] = c.ladder_steps;
        j["gaussian_only"] = c.gaussian_only;
    } else if (c.command == "mc") {
        ensemble();
        j["mode"] = c.mc_mode;
        j["count"] = c.count;
        j["seed"] = c.seed;
        j["xi"] = c.xi;
        j["k"] = c.rank;
        j["m"] = c.m;
    } else if (c.command == "validate") {
        j["only"] = c.only;
        j["quick"] = c.quick;
        j["seed"] = c.seed;
    }
    if (!c.table_path.empty()) j["table"] = c.table_path;
    if (c.workers) j["workers"] = c.workers;
    return j;
}

std::vector<double> parse_grid(const std::string& spec)
{
    double a, b, step;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || b < a)
        throw CallError{SE_ERR_INVALID_ARGUMENT, "grid must be lo:hi:step with lo <= hi and step > 0 (got '" + spec + "')"};
    std::vector<double> g;
    long count = std::lround(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) g.push_back(a + double(i) * step);
    return g;
}

se_ensemble ensemble_of(const Config& c)
{
    return se_ensemble{c.laguerre ? SE_LAGUERRE : SE_GAUSSIAN, c.beta, c.n, c.p};
}

// Column table written as CSV (with commented header) or JSON.
struct Output {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json extra = json::object();
};

void emit(const Config& c, const Output& out)
{
    std::ofstream file;
    if (!c.output.empty()) {
        file.open(c.output);
        if (!file) throw CallError{SE_ERR_IO, "cannot write '" + c.output + "'"};
    }
    std::ostream& os = c.output.empty() ? std::cout : file;
    json cfg = config_json(c);
    if (c.format == "json") {
        json j{{"schema", "softedge-json 1"}, {"version", se_version()}, {"config", cfg}};
        j["columns"] = out.columns;
        j["rows"] = out.rows;
        for (auto& [k, v] : out.extra.items()) j[k] = v;
        os << j.dump(2) << "\n";
        return;
    }
    os << "# schema: softedge-csv 1\n";
    os << "# version: " << se_version() << "\n";
    os << "# config: " << cfg.dump() << "\n";
    for (auto& [k, v] : out.extra.items()) os << "# " << k << ": " << v.dump() << "\n";
    for (size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << out.columns[i];
    os << "\n";
    char buf[40];
    for (const auto& r : out.rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", r[i]);
            os << (i ? "," : "") << buf;
        }
        os << "\n";
    }
}

const se_table* load_table(const Config& c, TableHandle& h)
{
    if (c.table_path.empty()) return nullptr;
    check(se_table_load(c.table_path.c_str(), &h.t));
    return h.t;
}

// induced functional for -k (rank) or plain generating function at xi
struct Induced {
    std::vector<int> orders;
    std::vector<double> weights;
    se_induced op{};
};

void make_induced(const Config& c, Induced& ind)
{
    if (c.rank > 0) {
        double f = 1;
        for (int r = 0; r < c.rank; ++r) {
            if (r > 0) f *= r;
            ind.orders.push_back(r);
            ind.weights.push_back((r % 2 ? -1.0 : 1.0) / f);
        }
        ind.op.xi_star = 1.0;
    } else {
        ind.orders = {0};
        ind.weights = {1.0};
        ind.op.xi_star = c.xi;
    }
    ind.op.nterms = int(ind.orders.size());
    ind.op.orders = ind.orders.data();
    ind.op.weights = ind.weights.data();
}

int run_limit(const Config& c)
{
    Output out;
    out.columns = {"s", c.rank > 0 ? "cdf" : "F"};
    if (c.pm) {
        out.columns.push_back("F_plus");
        out.columns.push_back("F_minus");
    }
    for (double s : parse_grid(c.grid)) {
        double v;
        if (c.rank > 0) check(se_kth_largest_limit_cdf(c.beta, c.rank - 1, s, &v));
        else check(se_limit_F(c.beta, s, c.xi, &v));
        std::vector<double> row{s, v};
        if (c.pm) {
            double fp, fm;
            check(se_F_pm(+1, s, c.xi, &fp));
            check(se_F_pm(-1, s, c.xi, &fm));
            row.push_back(fp);
            row.push_back(fm);
        }
        out.rows.push_back(row);
    }
    emit(c, out);
    return 0;
}

int run_finite(const Config& c)
{
    se_ensemble e = ensemble_of(c);
    se_scaling fr;
    check(se_plain_frame(&e, &fr));
    Output out;
    out.columns = {"s", "x", c.rank > 0 ? "cdf" : "E"};
    out.extra["frame"] = {{"mu", fr.mu}, {"sigma", fr.sigma}, {"h", fr.h}, {"tau", fr.tau}};
    std::vector<double> xs, ss;
    if (!c.x_grid.empty()) {
        xs = parse_grid(c.x_grid);
        for (double x : xs) ss.push_back((x - fr.mu) / fr.sigma);
    } else {
        ss = parse_grid(c.grid);
        for (double s : ss) xs.push_back(fr.mu + fr.sigma * s);
    }
    for (size_t i = 0; i < xs.size(); ++i) {
        double v;
        if (c.rank > 0) check(se_kth_largest_finite_cdf(&e, c.rank - 1, xs[i], &v));
        else check(se_E2n(&e, xs[i], c.xi, &v));
        out.rows.push_back({ss[i], xs[i], v});
    }
    emit(c, out);
    return 0;
}

int run_expand(const Config& c)
{
    TableHandle th;
    const se_table* t = load_table(c, th);
    se_ensemble e = ensemble_of(c);
    se_scaling fr;
    check(se_expansion_frame(&e, &fr));
    Induced ind;
    make_induced(c, ind);
    std::vector<double> s = parse_grid(c.grid);
    const int S = int(s.size()), M = c.m + 1;
    std::vector<double> values(size_t(M) * S), density(size_t(M) * S);
    check(se_expand_grid(t, &e, &ind.op, c.m, s.data(), S, values.data(), density.data()));
    Output out;
    out.columns = {"s", "x"};
    for (int m = 0; m < M; ++m) out.columns.push_back("value_m" + std::to_string(m));
    for (int m = 0; m < M; ++m) out.columns.push_back("density_m" + std::to_string(m));
    out.extra["frame"] = {{"mu", fr.mu}, {"sigma", fr.sigma}, {"h", fr.h}, {"tau", fr.tau}, {"n_prime", fr.n_prime}};
    for (int i = 0; i < S; ++i) {
        std::vector<double> row{s[i], fr.mu + fr.sigma * s[i]};
        for (int m = 0; m < M; ++m) row.push_back(values[size_t(m) * S + i]);
        for (int m = 0; m < M; ++m) row.push_back(density[size_t(m) * S + i]);
        out.rows.push_back(row);
    }
    emit(c, out);
    return 0;
}

int run_painleve(const Config& c)
{
    se_pii* sol = nullptr;
    check(se_pii_solve(c.xi, 0, 0, &sol));
    std::unique_ptr<se_pii, void (*)(se_pii*)> guard(sol, se_pii_free);
    Output out;
    out.columns = {"s", "q", "q_prime", "F2", "F_plus", "F_minus"};
    double residual, Lm, Lp;
    int iterations;
    check(se_pii_info(sol, &residual, &iterations, &Lm, &Lp));
    out.extra["solver"] = {{"residual", residual}, {"iterations", iterations}, {"L_minus", Lm}, {"L_plus", Lp}};
    for (double s : parse_grid(c.grid)) {
        double q, qp, f2, fp, fm;
        check(se_pii_q(sol, s, &q, &qp));
        check(se_pii_F(sol, SE_TARGET_F2, s, &f2));
        check(se_pii_F(sol, SE_TARGET_FPLUS, s, &fp));
        check(se_pii_F(sol, SE_TARGET_FMINUS, s, &fm));
        out.rows.push_back({s, q, qp, f2, fp, fm});
    }
    if (c.total) {
        double v, ref, err;
        check(se_total_integral(c.xi, &v, &ref, &err));
        out.extra["total_integral"] = {{"value", v}, {"artanh_sqrt_xi", ref}, {"difference", v - ref}, {"tail_error", err}};
    }
    emit(c, out);
    return 0;
}

int run_derive(const Config& c)
{
    se_derive_options o{c.ladder_first, c.ladder_steps, c.gaussian_only ? 0 : 1, c.workers, 1};
    TableHandle th;
    Owned report;
    check(se_derive(&o, &th.t, &report.p));
    json rep = json::parse(report.str());
    if (!c.output.empty()) check(se_table_save(th.t, c.output.c_str()));
    else {
        Owned text;
        check(se_table_format(th.t, &text.p));
        std::cout << text.str();
    }
    json j{{"schema", "softedge-json 1"}, {"version", se_version()}, {"config", config_json(c)}, {"report", rep}};
    std::cerr << j.dump(2) << "\n";
    return rep.value("xi_consistent", false) && rep.value("rounded", false) ? 0 : 1;
}

int run_mc(const Config& c)
{
    se_ensemble e = ensemble_of(c);
    if (c.mc_mode == "sample") {
        se_batch* b = nullptr;
        check(se_sample(&e, c.count, c.seed, c.workers, &b));
        std::unique_ptr<se_batch, void (*)(se_batch*)> guard(b, se_batch_free);
        if (c.output.empty()) throw CallError{SE_ERR_INVALID_ARGUMENT, "mc sample needs --output"};
        if (c.sample_format == "binary") check(se_batch_write_binary(b, c.output.c_str()));
        else check(se_batch_write_csv(b, c.output.c_str()));
        return 0;
    }
    Owned report;
    TableHandle th;
    const se_table* t = load_table(c, th);
    bool pass = true;
    if (c.mc_mode == "decimation") {
        check(se_decimation_check(c.n, c.count, c.seed, c.workers, &report.p));
        pass = json::parse(report.str()).value("pass", false);
    } else if (c.mc_mode == "thinning") {
        se_scaling fr;
        check(se_plain_frame(&e, &fr));
        std::vector<double> x;
        if (!c.x_grid.empty()) x = parse_grid(c.x_grid);
        else
            for (double s : parse_grid(c.grid)) x.push_back(fr.mu + fr.sigma * s);
        check(se_thinning_check(&e, c.xi, x.data(), int(x.size()), c.count, c.seed, c.workers, t, &report.p));
        pass = json::parse(report.str()).value("max_z", 1e300) < 4;
    } else if (c.mc_mode == "figure1") {
        check(se_figure1(&e, c.rank > 0 ? c.rank : 1, c.m, c.count, c.seed, c.workers, t, &report.p));
        pass = json::parse(report.str()).value("monotone", false);
    } else {
        throw CallError{SE_ERR_INVALID_ARGUMENT, "unknown mc mode '" + c.mc_mode + "'"};
    }
    json j{{"schema", "softedge-json 1"}, {"version", se_version()}, {"config", config_json(c)},
           {"report", json::parse(report.str())}};
    if (c.output.empty()) std::cout << j.dump(2) << "\n";
    else {
        std::ofstream f(c.output);
        if (!f) throw CallError{SE_ERR_IO, "cannot write '" + c.output + "'"};
        f << j.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

int run_validate(const Config& c)
{
    TableHandle th;
    const se_table* t = load_table(c, th);
    std::vector<int> ids = c.only;
    if (ids.empty())
        for (int i = 1; i <= se_criteria_count(); ++i) ids.push_back(i);
    json items = json::array();
    bool all = true;
    for (int id : ids) {
        int pass = 0;
        Owned rep;
        check(se_validate_criterion(id, c.seed, c.workers, c.quick ? 0 : 1, t, &pass, &rep.p));
        json r = json::parse(rep.str());
        std::cerr << (pass ? "PASS" : "FAIL") << " " << id << " " << r.value("name", "") << ": " << r.value("detail", "")
                  << "\n";
        items.push_back(r);
        all = all && pass;
    }
    json j{{"schema", "softedge-json 1"},
           {"version", se_version()},
           {"config", config_json(c)},
           {"pass", all},
           {"criteria", items}};
    if (c.output.empty()) std::cout << j.dump(2) << "\n";
    else {
        std::ofstream f(c.output);
        if (!f) throw CallError{SE_ERR_IO, "cannot write '" + c.output + "'"};
        f << j.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

void add_ensemble(CLI::App* sub, Config& c)
{
    sub->add_flag("--gaussian,!--laguerre", [&c](std::int64_t v) { c.laguerre = v < 0; },
                  "Gaussian (default) or Laguerre ensemble");
    sub->add_option("--beta", c.beta, "1, 2 or 4")->check(CLI::IsMember({1, 2, 4}));
    sub->add_option("-n", c.n, "dimension")->check(CLI::PositiveNumber);
    sub->add_option("-p", c.p, "Laguerre parameter, p > n - 1");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"soft-edge gap probabilities, expansions and checks"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("-o,--output", c.output, "output file (default stdout)");
        sub->add_option("--workers", c.workers, "worker threads (default SOFTEDGE_THREADS or hardware)");
    };

    auto* limit = app.add_subcommand("limit", "limit laws F_beta and k-th largest limit CDFs on an s grid");
    limit->add_option("--beta", c.beta)->check(CLI::IsMember({1, 2, 4}));
    limit->add_option("--xi", c.xi, "generating-function variable in [0, 1]");
    limit->add_option("-k", c.rank, "k-th largest level (1 = largest); evaluates at xi = 1");
    limit->add_option("--grid", c.grid, "s grid lo:hi:step");
    limit->add_flag("--pm", c.pm, "also emit F_+ and F_-");
    common(limit);

    auto* finite = app.add_subcommand("finite", "exact finite-n values for beta = 2");
    add_ensemble(finite, c);
    finite->add_option("--xi", c.xi);
    finite->add_option("-k", c.rank, "k-th largest level (1 = largest)");
    finite->add_option("--grid", c.grid, "scaled grid lo:hi:step (plain frame)");
    finite->add_option("--x-grid", c.x_grid, "unscaled level grid lo:hi:step (overrides --grid)");
    common(finite);

    auto* expand = app.add_subcommand("expand", "asymptotic expansion with per-order partial sums and densities");
    add_ensemble(expand, c);
    expand->add_option("--xi", c.xi);
    expand->add_option("-k", c.rank, "k-th largest level (1 = largest)");
    expand->add_option("--m", c.m, "correction order")->check(CLI::NonNegativeNumber);
    expand->add_option("--grid", c.grid, "s grid lo:hi:step (n' frame)");
    expand->add_option("--table", c.table_path, "coefficient table file (default: shipped)");
    common(expand);

    auto* painleve = app.add_subcommand("painleve", "q(s; xi), F_2 and F_+- by the Painleve route");
    painleve->add_option("--xi", c.xi);
    painleve->add_option("--grid", c.grid, "s grid inside [-10, 10]");
    painleve->add_flag("--total", c.total, "report int q against artanh sqrt(xi)");
    common(painleve);

    auto* derive = app.add_subcommand("derive", "extract, reconstruct and transfer the coefficient table");
    derive->add_option("--first", c.ladder_first, "smallest n of the ladder");
    derive->add_option("--steps", c.ladder_steps, "rungs, n_i = first * 2^(i/2)");
    derive->add_flag("--gaussian-only", c.gaussian_only, "skip the Laguerre ladders (tau = 0 only)");
    derive->add_option("-o,--output", c.output, "table file (default stdout)");
    derive->add_option("--workers", c.workers);

    auto* mc = app.add_subcommand("mc", "sampling, interrelation checks and histogram harness");
    mc->add_option("mode", c.mc_mode, "sample | decimation | thinning | figure1")
        ->check(CLI::IsMember({"sample", "decimation", "thinning", "figure1"}));
    add_ensemble(mc, c);
    mc->add_option("--count", c.count)->check(CLI::PositiveNumber);
    mc->add_option("--seed", c.seed);
    mc->add_option("--xi", c.xi);
    mc->add_option("-k", c.rank, "k-th largest level (figure1)");
    mc->add_option("--m", c.m, "highest expansion order (figure1)");
    mc->add_option("--grid", c.grid, "scaled threshold grid (thinning)");
    mc->add_option("--x-grid", c.x_grid, "unscaled threshold grid (thinning)");
    mc->add_option("--sample-format", c.sample_format)->check(CLI::IsMember({"csv", "binary"}));
    mc->add_option("--table", c.table_path);
    mc->add_option("-o,--output", c.output);
    mc->add_option("--workers", c.workers);

    auto* val = app.add_subcommand("validate", "acceptance criteria, JSON report");
    val->add_option("--only", c.only, "criterion ids")->delimiter(',');
    val->add_flag("--quick", c.quick, "criterion 6 from shipped certificates instead of a fresh extraction");
    val->add_option("--seed", c.seed);
    val->add_option("--table", c.table_path);
    val->add_option("-o,--output", c.output);
    val->add_option("--workers", c.workers);

    CLI11_PARSE(app, argc, argv);
    c.command = app.get_subcommands().front()->get_name();
    try {
        if (c.command == "limit") return run_limit(c);
        if (c.command == "finite") return run_finite(c);
        if (c.command == "expand") return run_expand(c);
        if (c.command == "painleve") return run_painleve(c);
        if (c.command == "derive") return run_derive(c);
        if (c.command == "mc") return run_mc(c);
        if (c.command == "validate") return run_validate(c);
    } catch (const CallError& e) {
        json err{{"error", {{"status", se_status_name(e.status)}, {"code", int(e.status)}, {"message", e.message}}},
                 {"config", config_json(c)}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 2;
}
