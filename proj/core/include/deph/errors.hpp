#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  explicit NonHermitianInput(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class NonSquare : public Error {
 public:
  NonSquare(std::ptrdiff_t rows, std::ptrdiff_t cols);
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotAState : public Error {
 public:
  using Error::Error;
};

class NonUnitary : public Error {
 public:
  NonUnitary(std::size_t index, double deviation);
  std::size_t index() const noexcept { return index_; }
  double deviation() const noexcept { return deviation_; }

 private:
  std::size_t index_;
  double deviation_;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class PoleAt : public Error {
 public:
  explicit PoleAt(double omega);
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  InsufficientSamples(std::size_t have, std::size_t need);
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonPositiveInput : public Error {
 public:
  NonPositiveInput(const std::string& field, double value);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace deph
