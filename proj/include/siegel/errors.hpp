#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class InvalidParameter : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class ModelMismatch : public Error {
  public:
    using Error::Error;
};

class InvalidDescriptor : public Error {
  public:
    using Error::Error;
};

class NotExpandable : public Error {
  public:
    using Error::Error;
};

class NoBackwardStep : public Error {
  public:
    using Error::Error;
};

class SolverFailure : public Error {
  public:
    SolverFailure(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

class ConstructionFailed : public Error {
  public:
    using Error::Error;
};

class OrbitTooShort : public Error {
  public:
    using Error::Error;
};

} // namespace siegel
