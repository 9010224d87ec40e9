#pragma once

#include <stdexcept>
#include <string>

namespace findim {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear system has no exact solution (rhs outside the column space).
class InconsistentError : public Error {
public:
    explicit InconsistentError(const std::string& msg) : Error(msg) {}
};

// A matrix or endomorphism expected to satisfy P*P = P does not.
class NotIdempotent : public Error {
public:
    explicit NotIdempotent(const std::string& msg) : Error(msg) {}
};

// A square block expected to be invertible is singular.
class NotInvertible : public Error {
public:
    explicit NotInvertible(const std::string& msg) : Error(msg) {}
};

// Requested symmetric-group degree or power exponent exceeds the configured cap,
// or the estimated working set exceeds the memory guard.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

// Permutation/group-algebra degrees do not match.
class DegreeMismatch : public Error {
public:
    explicit DegreeMismatch(const std::string& msg) : Error(msg) {}
};

// Partition sizes do not match.
class SizeMismatch : public Error {
public:
    explicit SizeMismatch(const std::string& msg) : Error(msg) {}
};

// Blocks fail to commute with the differentials.
class NotChainMap : public Error {
public:
    explicit NotChainMap(const std::string& msg) : Error(msg) {}
};

// A claimed subcomplex is not closed under the ambient differential.
class NotClosed : public Error {
public:
    explicit NotClosed(const std::string& msg) : Error(msg) {}
};

// A map required to be degreewise injective has a kernel.
class NotInjective : public Error {
public:
    explicit NotInjective(const std::string& msg) : Error(msg) {}
};

// An index argument is outside its admissible range.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

// A complex fed to a parity-sensitive check has homology in both parities.
class MixedParity : public Error {
public:
    explicit MixedParity(const std::string& msg) : Error(msg) {}
};

// Hypotheses of a theorem-level check fail on the given input.
class InapplicableError : public Error {
public:
    explicit InapplicableError(const std::string& msg) : Error(msg) {}
};

// Malformed serialized input (JSON schema violations, bad scalars, bad references).
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

} // namespace findim
