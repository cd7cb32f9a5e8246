#pragma once

#include "expansion/table_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace softedge {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    int workers = 0;
    // criterion 6 re-runs the full extraction; false checks the shipped
    // table's certificates only
    bool rederive = true;
    const CoefficientTable* table = nullptr; // default_table() when null
};

constexpr int kCriteria = 12;

const char* criterion_name(int id);
// Never throws: failures inside a check are reported in detail.
CriterionResult run_criterion(int id, const ValidationOptions& opt = {});
std::vector<CriterionResult> run_all(const ValidationOptions& opt = {});

} // namespace softedge
