#pragma once

#include <stdexcept>
#include <string>

namespace eternalbar {

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& m = "division by zero in Novikov field")
        : std::runtime_error(m) {}
};

struct TruncationOverflow : std::runtime_error {
    explicit TruncationOverflow(const std::string& m)
        : std::runtime_error(m) {}
};

struct ZeroClass : std::runtime_error {
    explicit ZeroClass(const std::string& m = "operation undefined on the zero class")
        : std::runtime_error(m) {}
};

struct MalformedPresentation : std::runtime_error {
    explicit MalformedPresentation(const std::string& m)
        : std::runtime_error(m) {}
};

struct BasisMismatch : std::runtime_error {
    explicit BasisMismatch(const std::string& m)
        : std::runtime_error(m) {}
};

struct MissingInverse : std::runtime_error {
    explicit MissingInverse(const std::string& m)
        : std::runtime_error(m) {}
};

struct EternalClass : std::runtime_error {
    explicit EternalClass(const std::string& m = "class is eternal; invariant is -inf")
        : std::runtime_error(m) {}
};

struct ClosureViolation : std::runtime_error {
    explicit ClosureViolation(const std::string& m)
        : std::runtime_error(m) {}
};

struct ContractibleClass : std::runtime_error {
    explicit ContractibleClass(const std::string& m = "no closed Reeb orbit in the contractible class")
        : std::runtime_error(m) {}
};

struct ResolutionTooCoarse : std::runtime_error {
    explicit ResolutionTooCoarse(const std::string& m)
        : std::runtime_error(m) {}
};

struct Inconsistent : std::runtime_error {
    explicit Inconsistent(const std::string& m)
        : std::runtime_error(m) {}
};

struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& m)
        : std::runtime_error(m) {}
};

} // namespace eternalbar
