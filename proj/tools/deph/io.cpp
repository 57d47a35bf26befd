#include "io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace deph::cli {

using nlohmann::json;

InputError::InputError(std::string path, const std::string& what) : Error(path + ": " + what), path_(std::move(path)) {}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

namespace {

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(path, "expected a number or a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw InputError(path, std::string("missing required field \"") + key + "\"");
  return j.at(key);
}

Index positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw InputError(path, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

void require_shape(const ComplexMatrix& m, Index rows, Index cols, const std::string& path) {
  if (m.rows() != rows || m.cols() != cols)
    throw InputError(path, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Library errors raised while validating a parsed field are reported against
// that field's JSON path.
template <typename F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw InputError(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw InputError(path + "[0]", "expected a non-empty row array");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw InputError(row_path, "expected a row array");
    if (j[i].size() != cols) throw InputError(row_path, "row length " + std::to_string(j[i].size()) + " differs from " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Index>(i), static_cast<Index>(k)) = complex_from_json(j[i][k], row_path + "[" + std::to_string(k) + "]");
  }
  return m;
}

namespace {

using Channel = std::variant<dephasing::PureDephasingChannel, dephasing::DephasingFactorMatrix>;

Channel parse_channel(const json& j) {
  if (j.contains("phi")) {
    ComplexMatrix phi = matrix_from_json(j.at("phi"), "$.phi");
    require_shape(phi, phi.rows(), phi.rows(), "$.phi");
    return at_path("$.phi", [&] { return dephasing::DephasingFactorMatrix(std::move(phi)); });
  }
  const Index d_system = positive_int(require(j, "d_system", "$"), "$.d_system");
  const Index d_env = positive_int(require(j, "d_env", "$"), "$.d_env");
  const json& us = require(j, "unitaries", "$");
  if (!us.is_array()) throw InputError("$.unitaries", "expected an array of matrices");
  if (static_cast<Index>(us.size()) != d_system)
    throw InputError("$.unitaries", "expected d_system = " + std::to_string(d_system) + " matrices, got " + std::to_string(us.size()));
  std::vector<ComplexMatrix> unitaries;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const std::string p = "$.unitaries[" + std::to_string(i) + "]";
    unitaries.push_back(matrix_from_json(us[i], p));
    require_shape(unitaries.back(), d_env, d_env, p);
    const double dev = qmat::unitarity_deviation(unitaries.back());
    if (dev > dephasing::kUnitaryTol) throw InputError(p, NonUnitary(i, dev).what());
  }
  ComplexMatrix env = matrix_from_json(require(j, "env_state", "$"), "$.env_state");
  require_shape(env, d_env, d_env, "$.env_state");
  return at_path("$.env_state", [&] { return dephasing::build_channel(std::move(unitaries), std::move(env)); });
}

}  // namespace

ChannelSpec parse_channel_spec(const json& j) {
  if (!j.is_object()) throw InputError("$", "expected a JSON object");
  ChannelSpec spec{parse_channel(j), std::nullopt};
  if (j.contains("system_state")) {
    const Index d_s = std::visit([](const auto& c) -> Index {
      if constexpr (std::is_same_v<std::decay_t<decltype(c)>, dephasing::PureDephasingChannel>) return c.dim_system();
      else return c.dim();
    }, spec.channel);
    ComplexMatrix rho = matrix_from_json(j.at("system_state"), "$.system_state");
    require_shape(rho, d_s, d_s, "$.system_state");
    at_path("$.system_state", [&] {
      qmat::validate_state(rho);
      return 0;
    });
    spec.system_state = std::move(rho);
  }
  return spec;
}

namespace {
json criterion(const witness::CriterionResult& c) { return {{"pass", c.pass}, {"max_violation", c.max_violation}}; }
}  // namespace

json to_json(const witness::CriteriaReport& r) {
  json q = criterion(r.qutrit_like);
  q["used_branch0_r"] = r.qutrit_like.used_branch0_r;
  return {{"tolerance", r.tolerance},
          {"zero_discord", criterion(r.zero_discord)},
          {"qubit_like", criterion(r.qubit_like)},
          {"qutrit_like", q},
          {"separable", r.separable()}};
}

json to_json(const witness::EoAResult& r) {
  json traces = json::array();
  for (const auto& t : r.traces)
    traces.push_back({{"restart", t.restart},
                      {"objective", t.objective},
                      {"iterations", t.iterations},
                      {"gradient_norm", t.gradient_norm},
                      {"converged", t.converged},
                      {"monotone", t.monotone}});
  json vectors = json::array();
  for (const auto& v : r.best.vectors) vectors.push_back(to_json(v));
  return {{"e_a_lower_bound", r.e_a_lower_bound},
          {"log_base", r.log_base},
          {"ensemble_size", r.ensemble_size},
          {"rank", r.rank},
          {"restarts", r.restarts},
          {"best_restart", r.best_restart},
          {"converged", r.converged},
          {"gradient_norm", r.gradient_norm},
          {"decomposition", {{"weights", r.best.weights}, {"vectors", vectors}}},
          {"traces", traces}};
}

json to_json(const witness::MuBaselineStats& s) {
  return {{"d_system", s.d_s}, {"samples", s.samples}, {"max_q_a", s.max_q_a}, {"mean_q_a", s.mean_q_a}};
}

json to_json(const witness::WitnessReport& r) {
  json out = {{"schema_version", kSchemaVersion},
              {"q_a", r.q_a},
              {"e_a", r.e_a},
              {"e_a_max", r.e_a_max},
              {"log_base", r.log_base},
              {"negativity", nullptr},
              {"criteria", nullptr},
              {"eoa", to_json(r.eoa)},
              {"baseline", nullptr}};
  if (r.negativity) out["negativity"] = *r.negativity;
  if (r.criteria) out["criteria"] = to_json(*r.criteria);
  if (r.baseline) out["baseline"] = to_json(*r.baseline);
  return out;
}

json to_json(const models::GravityParams& p) {
  const auto& in = p.inputs;
  return {{"inputs",
           {{"rho_density", in.density},
            {"r_particle", in.r_particle},
            {"r_osc", in.r_osc},
            {"d", in.d},
            {"d0", in.d0},
            {"omega", in.omega},
            {"omega_is_bare", in.omega_is_bare},
            {"temp", in.temperature}}},
          {"m", p.m},
          {"M", p.big_m},
          {"omega_tilde", p.omega_tilde},
          {"g", p.g},
          {"g_over_omega_tilde", p.g / p.omega_tilde},
          {"omega_m", p.omega_m},
          {"n_bar", p.n_bar},
          {"t_star", p.t_star()}};
}

json to_json(const he::FitResult& f) {
  json regions = json::array();
  for (const he::Interval& iv : he::negativity_regions(f.alpha)) {
    // JSON has no infinities; unbounded ends are null.
    regions.push_back(json::array({std::isfinite(iv.lo) ? json(iv.lo) : json(nullptr),
                                   std::isfinite(iv.hi) ? json(iv.hi) : json(nullptr)}));
  }
  return {{"schema_version", kSchemaVersion},
          {"alpha", f.alpha},
          {"residual_sum_of_squares", f.residual_sum_of_squares},
          {"samples", f.samples},
          {"negativity_regions", regions}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::optional<double> parse_number(std::string field) {
  const auto first = field.find_first_not_of(" \t\r");
  const auto last = field.find_last_not_of(" \t\r");
  if (first == std::string::npos) return std::nullopt;
  field = field.substr(first, last - first + 1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<he::FitSample> read_fit_csv(std::istream& in, const std::string& name) {
  std::vector<he::FitSample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string a, b, extra;
    std::getline(ss, a, ',');
    const bool has_b = static_cast<bool>(std::getline(ss, b, ','));
    const bool has_extra = static_cast<bool>(std::getline(ss, extra));
    const std::string where = name + ":" + std::to_string(lineno);
    const auto t = parse_number(a);
    if (!t && out.empty() && lineno == 1) continue;  // header
    if (!has_b || has_extra) throw InputError(where, "expected two columns t,im_phi");
    const auto y = parse_number(b);
    if (!t || !y) throw InputError(where, "non-numeric field");
    out.push_back({*t, *y});
  }
  if (out.empty()) throw InputError(name, "no data rows");
  return out;
}

}  // namespace deph::cli
