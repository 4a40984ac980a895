#pragma once

#include <cstdlib>
#include <stdexcept>

namespace frobsum {

// Thrown when an operation would scan or allocate past the configured cap.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an input violates a documented hypothesis of the operation
// (e.g. a polynomial whose degree is divisible by the characteristic).
struct HypothesisViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Cap on exhaustive field scans (number of elements). Override with the
// FROBSUM_SCAN_BUDGET environment variable.
inline long long scan_budget() {
    static const long long v = [] {
        if (const char* s = std::getenv("FROBSUM_SCAN_BUDGET")) {
            long long b = std::atoll(s);
            if (b > 0) return b;
        }
        return 10'000'000LL;
    }();
    return v;
}

// Cap on the side length of constructed matrices (tensor powers grow as
// dim^d). Override with FROBSUM_MATRIX_BUDGET.
inline long long matrix_budget() {
    static const long long v = [] {
        if (const char* s = std::getenv("FROBSUM_MATRIX_BUDGET")) {
            long long b = std::atoll(s);
            if (b > 0) return b;
        }
        return 4096LL;
    }();
    return v;
}

}  // namespace frobsum
