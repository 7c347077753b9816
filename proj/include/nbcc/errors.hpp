#ifndef NBCC_ERRORS_HPP
#define NBCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nbcc {

struct NonPrimitivePolynomial : std::runtime_error {
    explicit NonPrimitivePolynomial(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

struct ConstructionFailure : std::runtime_error {
    explicit ConstructionFailure(const std::string& what) : std::runtime_error(what) {}
};

struct SingularH0 : std::runtime_error {
    explicit SingularH0(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroLength : std::runtime_error {
    explicit ZeroLength(const std::string& what) : std::runtime_error(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct BadLength : std::invalid_argument {
    explicit BadLength(const std::string& what) : std::invalid_argument(what) {}
};

struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    int line_number;
};

} // namespace nbcc

#endif
