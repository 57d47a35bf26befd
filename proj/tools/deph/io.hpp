#pragma once

// JSON and CSV plumbing for the command-line front end. Complex numbers are
// [re, im] pairs and matrices are row-major nested arrays of them.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "deph/dephasing.hpp"
#include "deph/errors.hpp"
#include "deph/he_analysis.hpp"
#include "deph/models.hpp"
#include "deph/witness.hpp"

namespace deph::cli {

inline constexpr int kSchemaVersion = 1;

/// Malformed input; `path` is a JSON path like "$.unitaries[1][0]" or a
/// "file:line" location for CSV input.
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& what);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const ComplexVector& v);

ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);

/// A channel spec is either {d_system, d_env, unitaries, env_state} or {phi}.
/// Either form may carry an optional "system_state" matrix.
struct ChannelSpec {
  std::variant<dephasing::PureDephasingChannel, dephasing::DephasingFactorMatrix> channel;
  std::optional<ComplexMatrix> system_state;
};

ChannelSpec parse_channel_spec(const nlohmann::json& j);

nlohmann::json to_json(const witness::CriteriaReport& r);
nlohmann::json to_json(const witness::EoAResult& r);
nlohmann::json to_json(const witness::MuBaselineStats& s);
nlohmann::json to_json(const witness::WitnessReport& r);
nlohmann::json to_json(const models::GravityParams& p);
nlohmann::json to_json(const he::FitResult& f);

/// Shortest round-trip decimal representation, '.' separator, locale-free.
std::string format_double(double x);

/// Rows of (t, im_phi). An optional header row is skipped when its first
/// field is not numeric.
std::vector<he::FitSample> read_fit_csv(std::istream& in, const std::string& name);

}  // namespace deph::cli
