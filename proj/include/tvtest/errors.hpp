// errors.hpp — exception taxonomy. The CLI maps these onto its exit-code
// contract: input/schema problems -> 1, empty/infeasible hypotheses -> 2,
// numeric failures -> 3.
#pragma once

#include <stdexcept>
#include <string>

namespace tvtest {

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- input / construction problems (CLI exit 1) ---

class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class InvalidMeasure : public Error {
  public:
    explicit InvalidMeasure(const std::string& what) : Error(what) {}
};

class InvalidGenerator : public Error {
  public:
    explicit InvalidGenerator(const std::string& what) : Error(what) {}
};

class InvalidArgument : public Error {
  public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class UnknownExample : public Error {
  public:
    explicit UnknownExample(const std::string& what) : Error(what) {}
};

class InvalidParams : public Error {
  public:
    explicit InvalidParams(const std::string& what) : Error(what) {}
};

class SyntaxError : public Error {
  public:
    explicit SyntaxError(const std::string& what) : Error(what) {}
};

// Carries the JSON path of the offending field.
class SchemaError : public Error {
  public:
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

class ValidationError : public Error {
  public:
    ValidationError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

// --- hypothesis-level problems (CLI exit 2) ---

class EmptyHypothesis : public Error {
  public:
    explicit EmptyHypothesis(const std::string& what) : Error(what) {}
};

class NoPoweredEVariable : public Error {
  public:
    explicit NoPoweredEVariable(const std::string& what) : Error(what) {}
};

// --- numeric failures (CLI exit 3) ---

class NumericError : public Error {
  public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

class MaxIterationsExceeded : public NumericError {
  public:
    explicit MaxIterationsExceeded(const std::string& what) : NumericError(what) {}
};

class NumericBreakdown : public NumericError {
  public:
    explicit NumericBreakdown(const std::string& what) : NumericError(what) {}
};

class DualityGapExceeded : public NumericError {
  public:
    explicit DualityGapExceeded(const std::string& what) : NumericError(what) {}
};

}  // namespace tvtest
