#pragma once

#include <stdexcept>
#include <string>

namespace frob {

// Failure categories that the CLI maps onto distinct exit codes.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : std::runtime_error {
    std::size_t byte_offset;
    parse_error(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (byte " + std::to_string(offset) + ")"), byte_offset(offset) {}
};

struct budget_infeasible_error : std::runtime_error {
    double minimal_feasible_budget;
    budget_infeasible_error(const std::string& msg, double minimal_k)
        : std::runtime_error(msg + "; minimal feasible budget " + std::to_string(minimal_k)),
          minimal_feasible_budget(minimal_k) {}
};

struct certificate_violation_error : std::runtime_error {
    explicit certificate_violation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct oracle_inconsistency_error : std::runtime_error {
    explicit oracle_inconsistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct training_failure_error : std::runtime_error {
    explicit training_failure_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace frob
