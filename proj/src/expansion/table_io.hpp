#pragma once

#include "symbolic/symbolic.hpp"

#include <string>

namespace softedge {

// Text format, one record per (beta, j, k):
//   # key: value            header lines (format, source, commit)
//   P beta j k provenance n certificate...
//   deg_s deg_tau numerator denominator     (n lines)
std::string format_table(const CoefficientTable& table);
CoefficientTable parse_table(const std::string& text);

CoefficientTable load_table(const std::string& path);
void save_table(const CoefficientTable& table, const std::string& path);

// The table shipped with the library (j <= 2, all beta).
const CoefficientTable& default_table();
const char* shipped_table_text();

// P(s, tau) as a double; pre: poly in Q[s, tau].
double eval_st(const QPoly& poly, double s, double tau);

} // namespace softedge
