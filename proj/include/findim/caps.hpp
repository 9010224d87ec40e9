#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include <findim/errors.hpp>

namespace findim {

// Resource limits for the combinatorially explosive operations.
//
// Tensor powers grow as dim^m and group-algebra elements as n!, so every
// operation that builds one checks against these limits first and throws
// CapExceeded instead of exhausting memory. The byte guard defaults to
// ENGINE_MAX_BYTES when that environment variable is set.
struct Caps {
    int group_degree = 8;      // largest symmetric-group degree n
    int power_exponent = 5;    // largest tensor-power exponent m
    int power_dimension = 6;   // largest total graded dimension of a power base
    std::size_t max_bytes = default_max_bytes();

    static std::size_t default_max_bytes() {
        if (const char* env = std::getenv("ENGINE_MAX_BYTES")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return std::size_t{512} * 1024 * 1024;
    }

    void check_group_degree(int n) const {
        if (n < 0) throw RangeError("symmetric-group degree must be nonnegative, got " + std::to_string(n));
        if (n > group_degree)
            throw CapExceeded("symmetric-group degree " + std::to_string(n) + " exceeds cap " +
                              std::to_string(group_degree));
    }
};

} // namespace findim
