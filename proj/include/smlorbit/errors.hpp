#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smlorbit {

// Process exit codes used by the CLI; library errors carry the class they
// belong to so the tool layer can map exceptions without string matching.
enum class ErrorClass : int {
    validation = 2,
    bad_prime = 3,
    degree_overflow = 4,
    indeterminate = 5,
    internal = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& msg) : std::runtime_error(msg), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }

private:
    ErrorClass cls_;
};

struct UnknownVariable : Error {
    UnknownVariable(const std::string& name, std::size_t offset)
        : Error(ErrorClass::validation,
                "unknown variable '" + name + "' at offset " + std::to_string(offset)),
          name(name), offset(offset) {}
    std::string name;
    std::size_t offset;
};

struct MalformedExpression : Error {
    MalformedExpression(const std::string& what, std::size_t offset)
        : Error(ErrorClass::validation, what + " at offset " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

struct ExponentOutOfRange : Error {
    ExponentOutOfRange(std::size_t offset)
        : Error(ErrorClass::validation, "exponent out of range at offset " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

struct RingMismatch : Error {
    explicit RingMismatch(const std::string& msg = "operands belong to different rings")
        : Error(ErrorClass::validation, msg) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg = "wrong number of arguments for ring arity")
        : Error(ErrorClass::validation, msg) {}
};

struct NotAField : Error {
    explicit NotAField(const std::string& msg = "operation requires field coefficients")
        : Error(ErrorClass::validation, msg) {}
};

struct NotZeroDimensional : Error {
    explicit NotZeroDimensional(const std::string& msg = "ideal is not zero-dimensional")
        : Error(ErrorClass::validation, msg) {}
};

struct BadPrime : Error {
    explicit BadPrime(const std::string& msg) : Error(ErrorClass::bad_prime, msg) {}
};

struct SmallPrime : Error {
    explicit SmallPrime(const std::string& msg) : Error(ErrorClass::bad_prime, msg) {}
};

struct NoInverse : Error {
    explicit NoInverse(const std::string& msg = "map carries no verified inverse")
        : Error(ErrorClass::validation, msg) {}
};

struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& msg = "degree cap exceeded")
        : Error(ErrorClass::degree_overflow, msg) {}
};

struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& msg) : Error(ErrorClass::validation, msg) {}
};

struct InternalDefect : Error {
    explicit InternalDefect(const std::string& msg) : Error(ErrorClass::internal, msg) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(ErrorClass::indeterminate, msg) {}
};

struct IndeterminateCertification : Error {
    explicit IndeterminateCertification(const std::string& msg)
        : Error(ErrorClass::indeterminate, msg) {}
};

struct EnumerationTooLarge : Error {
    explicit EnumerationTooLarge(const std::string& msg = "point enumeration exceeds cap")
        : Error(ErrorClass::validation, msg) {}
};

struct SingularJacobian : Error {
    explicit SingularJacobian(const std::string& msg = "Jacobian not invertible mod p")
        : Error(ErrorClass::validation, msg) {}
};

struct ValidationError : Error {
    ValidationError(const std::string& field, const std::string& msg)
        : Error(ErrorClass::validation, "field '" + field + "': " + msg), field(field) {}
    std::string field;
};

} // namespace smlorbit
