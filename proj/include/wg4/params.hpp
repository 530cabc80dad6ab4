#pragma once

#include <cmath>
#include <cstdint>

#include "wg4/errors.hpp"

namespace wg4 {

// Global parameter bundle. Defining relations:
//   U = (N / (64 (1 + delta0)))^{1/4},  V = U^{7/8},  L = log N,
//   D = N^xi with 0 < xi < 9/25,  z = sieve level.
struct Params {
    std::uint64_t N = 0;
    double delta0 = 1e-6;
    double U = 0.0;
    double V = 0.0;
    double L = 0.0;
    double xi = 0.2;
    double D = 0.0;
    double z = 0.0;

    static Params from_N(std::uint64_t N, double delta0 = 1e-6, double xi = 0.2,
                         double z = 0.0) {
        if (N < 2) throw contract_violation("Params: N must be >= 2");
        if (delta0 <= 0.0) throw contract_violation("Params: delta0 must be > 0");
        if (!(xi > 0.0 && xi < 9.0 / 25.0))
            throw contract_violation("Params: xi must lie in (0, 9/25)");
        Params p;
        p.N = N;
        p.delta0 = delta0;
        p.xi = xi;
        const double n = static_cast<double>(N);
        p.U = std::pow(n / (64.0 * (1.0 + delta0)), 0.25);
        p.V = std::pow(p.U, 7.0 / 8.0);
        p.L = std::log(n);
        p.D = std::pow(n, xi);
        p.z = z;
        return p;
    }

    // Relative error of the defining relations; both must be < 1e-12.
    double relation_error_U() const {
        const double lhs = std::pow(U, 4) * 64.0 * (1.0 + delta0);
        return std::fabs(lhs - static_cast<double>(N)) / static_cast<double>(N);
    }
    double relation_error_V() const {
        const double lhs = std::pow(U, 7.0 / 8.0);
        return std::fabs(lhs - V) / lhs;
    }
};

}  // namespace wg4
