#pragma once

#include <stdexcept>
#include <string>

namespace wg4 {

// Exit-code mapping used by the CLI: usage errors are handled by the
// argument parser; everything below maps to exit 2 (claim failure) or
// exit 3 (resource/precision).

struct contract_violation : std::logic_error {
    explicit contract_violation(const std::string& msg) : std::logic_error(msg) {}
};

struct empty_domain_error : std::invalid_argument {
    explicit empty_domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// An exact/feasible mode was requested outside its configured range.
struct mode_refused : std::runtime_error {
    explicit mode_refused(const std::string& msg) : std::runtime_error(msg) {}
};

struct precision_exhausted : std::runtime_error {
    double best_estimate = 0.0;
    double err = 0.0;
    explicit precision_exhausted(const std::string& msg, double best = 0.0, double e = 0.0)
        : std::runtime_error(msg), best_estimate(best), err(e) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wg4
