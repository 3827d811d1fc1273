#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ezd {

// thrown when a full divisor enumeration would visit more tuples than allowed;
// callers are expected to fall back to the truncated evaluation
struct BudgetExceeded : std::runtime_error {
    std::uint64_t divisor_count;
    std::uint64_t budget;
    BudgetExceeded(std::uint64_t dc, std::uint64_t b)
        : std::runtime_error("divisor enumeration budget exceeded: " + std::to_string(dc) +
                             " divisors > budget " + std::to_string(b)),
          divisor_count(dc), budget(b) {}
};

// thrown when an integer cannot be fully factored with the available prime table;
// names the residual cofactor so the caller can size a bigger table
struct CapabilityError : std::runtime_error {
    std::uint64_t residual;
    CapabilityError(std::uint64_t res, std::uint64_t limit)
        : std::runtime_error("cannot certify residual cofactor " + std::to_string(res) +
                             " with prime table limit " + std::to_string(limit)),
          residual(res) {}
};

} // namespace ezd
