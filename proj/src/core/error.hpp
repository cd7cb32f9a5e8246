#pragma once

#include <stdexcept>
#include <string>

namespace softedge {

// Numeric values are mirrored by the SE_ERR_* codes of the C header.
enum class Status : int {
    ok = 0,
    invalid_argument = 1,
    out_of_range = 2,
    not_converged = 3,
    infeasible = 4,
    degree_bound = 5,
    non_unique = 6,
    io = 7,
    validation = 8,
    internal = 9,
};

class Error : public std::runtime_error {
public:
    Error(Status st, const std::string& msg) : std::runtime_error(msg), status_(st) {}
    Status status() const noexcept { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void fail(Status st, const std::string& msg) { throw Error(st, msg); }

inline void require(bool cond, Status st, const std::string& msg)
{
    if (!cond) fail(st, msg);
}

const char* status_name(Status st);

} // namespace softedge
