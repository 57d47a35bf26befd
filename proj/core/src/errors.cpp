#include "deph/errors.hpp"

#include <sstream>

namespace deph {

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

NonHermitianInput::NonHermitianInput(double deviation)
    : Error("matrix is not Hermitian (max |A - A^dagger| = " + format_double(deviation) + ")"),
      deviation_(deviation) {}

NonSquare::NonSquare(std::ptrdiff_t rows, std::ptrdiff_t cols)
    : Error("matrix is not square (" + std::to_string(rows) + "x" + std::to_string(cols) + ")") {}

NonUnitary::NonUnitary(std::size_t index, double deviation)
    : Error("unitaries[" + std::to_string(index) + "] is not unitary (max |U U^dagger - I| = " +
            format_double(deviation) + ")"),
      index_(index),
      deviation_(deviation) {}

PoleAt::PoleAt(double omega)
    : Error("chi(omega) has a pole at omega = " + format_double(omega)), omega_(omega) {}

InsufficientSamples::InsufficientSamples(std::size_t have, std::size_t need)
    : Error("need at least " + std::to_string(need) + " samples, got " + std::to_string(have)) {}

NonPositiveInput::NonPositiveInput(const std::string& field, double value)
    : Error(field + " must be positive (got " + format_double(value) + ")"), field_(field) {}

}  // namespace deph
