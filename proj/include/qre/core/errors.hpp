#pragma once

#include <stdexcept>
#include <string>

namespace qre {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(long a, long b)
        : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class InvalidMatrix : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NotUnitary : public Error {
public:
    explicit NotUnitary(double defect)
        : Error("frame is not unitary (max |F*F - I| = " + std::to_string(defect) + ")") {}
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, int iterations, double bestResidual)
        : Error(what + " did not converge after " + std::to_string(iterations) +
                " iterations (best residual " + std::to_string(bestResidual) + ")"),
          iterations_(iterations), bestResidual_(bestResidual) {}

    int iterations() const { return iterations_; }
    double bestResidual() const { return bestResidual_; }

private:
    int iterations_;
    double bestResidual_;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    LengthMismatch(long a, long b)
        : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class DimensionTooSmall : public Error {
public:
    DimensionTooSmall(long n, long minimum)
        : Error("dimension " + std::to_string(n) + " below minimum " + std::to_string(minimum)) {}
};

class UnknownCheckId : public Error {
public:
    explicit UnknownCheckId(const std::string& id) : Error("unknown check id: " + id) {}
};

class ParamOutOfDomain : public Error {
public:
    using Error::Error;
};

class UnknownSuite : public Error {
public:
    explicit UnknownSuite(const std::string& id) : Error("unknown suite: " + id) {}
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace qre
