#include "expansion/table_io.hpp"

#include "core/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace softedge {

std::string format_table(const CoefficientTable& table)
{
    std::ostringstream os;
    os << "# format: softedge-coefficients 1\n";
    if (!table.source.empty()) os << "# source: " << table.source << "\n";
    if (!table.commit.empty()) os << "# commit: " << table.commit << "\n";
    os << "# record: P beta j k provenance terms certificate; then terms lines: deg_s deg_tau num den\n";
    for (const auto& [key, entry] : table.entries()) {
        auto [beta, j, k] = key;
        os << "P " << beta << " " << j << " " << k << " " << provenance_name(entry.provenance) << " "
           << entry.poly.terms().size();
        if (!entry.certificate.empty()) os << " " << entry.certificate;
        os << "\n";
        for (const auto& [e, c] : entry.poly.terms())
            os << "  " << e[QPoly::S] << " " << e[QPoly::Tau] << " " << c.get_num().get_str() << " "
               << c.get_den().get_str() << "\n";
        os << "  # " << entry.poly.str() << "\n";
    }
    return os.str();
}

CoefficientTable parse_table(const std::string& text)
{
    CoefficientTable t;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto bad = [&](const std::string& why) {
        fail(Status::io, "coefficient table line " + std::to_string(lineno) + ": " + why);
    };
    auto next_data_line = [&](std::string& out) {
        while (std::getline(is, out)) {
            ++lineno;
            auto pos = out.find_first_not_of(" \t\r");
            if (pos == std::string::npos || out[pos] == '#') continue;
            return true;
        }
        return false;
    };
    bool saw_format = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') {
            std::string body = line.substr(pos + 1);
            auto colon = body.find(':');
            if (colon == std::string::npos) continue;
            std::string key = body.substr(0, colon), value = body.substr(colon + 1);
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(" \t"));
                s.erase(s.find_last_not_of(" \t\r") + 1);
                return s;
            };
            key = trim(key);
            value = trim(value);
            if (key == "format") {
                if (value != "softedge-coefficients 1") bad("unsupported format '" + value + "'");
                saw_format = true;
            } else if (key == "source") {
                t.source = value;
            } else if (key == "commit") {
                t.commit = value;
            }
            continue;
        }
        std::istringstream rec(line);
        std::string tag, prov, cert;
        int beta, j, k;
        size_t n;
        if (!(rec >> tag >> beta >> j >> k >> prov >> n) || tag != "P") bad("malformed record header");
        std::getline(rec, cert);
        cert.erase(0, cert.find_first_not_of(" \t"));
        cert.erase(cert.find_last_not_of(" \t\r") + 1);
        QPoly poly;
        for (size_t i = 0; i < n; ++i) {
            std::string term;
            if (!next_data_line(term)) bad("truncated record");
            std::istringstream ts(term);
            int ds, dt;
            std::string num, den;
            if (!(ts >> ds >> dt >> num >> den) || ds < 0 || dt < 0) bad("malformed term");
            mpq_class c;
            try {
                c = mpq_class(mpz_class(num), mpz_class(den));
            } catch (const std::exception&) {
                bad("bad rational");
            }
            if (c.get_den() == 0) bad("zero denominator");
            c.canonicalize();
            poly += QPoly::monomial({ds, dt, 0, 0}, c);
        }
        try {
            t.set(beta, j, k, poly, provenance_from(prov), cert);
        } catch (const Error& e) {
            bad(e.what());
        }
    }
    if (!saw_format) fail(Status::io, "coefficient table: missing format header");
    return t;
}

CoefficientTable load_table(const std::string& path)
{
    std::ifstream in(path);
    require(bool(in), Status::io, "cannot open coefficient table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_table(ss.str());
}

void save_table(const CoefficientTable& table, const std::string& path)
{
    std::ofstream out(path);
    require(bool(out), Status::io, "cannot write coefficient table '" + path + "'");
    out << format_table(table);
    require(bool(out), Status::io, "write failed for '" + path + "'");
}

const CoefficientTable& default_table()
{
    static const CoefficientTable table = parse_table(shipped_table_text());
    return table;
}

double eval_st(const QPoly& poly, double s, double tau)
{
    long double acc = 0;
    for (const auto& [e, c] : poly.terms()) {
        require(e[QPoly::Q] == 0 && e[QPoly::P] == 0, Status::invalid_argument, "eval_st: poly involves q or p");
        acc += (long double)c.get_d() * std::pow((long double)s, e[QPoly::S]) *
               std::pow((long double)tau, e[QPoly::Tau]);
    }
    return double(acc);
}

} // namespace softedge
