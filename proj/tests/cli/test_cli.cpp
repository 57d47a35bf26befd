#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "io.hpp"
#include "json.hpp"

using namespace deph;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "deph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DEPH_TEST_DATA_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(CliTrappedIon, SinglePointAtZero) {
  const Result r = run_cli({"trapped-ion", "--steps", "1", "--t-max", "0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "t,qa,re_phi,im_phi");
  EXPECT_EQ(l[1].substr(0, 2), "0,");
}

TEST(CliTrappedIon, GridAndShotsColumns) {
  const Result r = run_cli({"trapped-ion", "--steps", "5", "--shots", "300", "--seed", "42", "--restarts", "4"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "t,qa,re_phi,im_phi,re_phi_shots,im_phi_shots");
  // Row k = 2 is t = pi/2: Q_A vanishes and phi = -1/2 + i sqrt(3)/2.
  std::istringstream row(l[3]);
  std::vector<double> f;
  for (std::string cell; std::getline(row, cell, ',');) f.push_back(std::stod(cell));
  ASSERT_EQ(f.size(), 6u);
  EXPECT_NEAR(f[1], 0.0, 1e-6);
  EXPECT_NEAR(f[2], -0.5, 1e-12);
  EXPECT_NEAR(f[3], 0.8660254037844386, 1e-12);
  EXPECT_NEAR(f[5], f[3], 0.3);
}

TEST(CliTrappedIon, Deterministic) {
  const std::vector<std::string> args{"trapped-ion", "--steps", "4", "--shots", "10", "--seed", "7", "--restarts", "3"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(CliWitness, IdentityChannel) {
  const Result r = run_cli({"witness", "--input", data("identity.json"), "--restarts", "4"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("q_a").get<double>(), 0.0, 1e-9);
  EXPECT_TRUE(j.at("criteria").at("zero_discord").at("pass").get<bool>());
  EXPECT_NEAR(j.at("negativity").get<double>(), 0.0, 1e-12);
}

TEST(CliWitness, TrappedIonQuarterPi) {
  const double t = 0.7853981633974483;
  const auto v = models::trapped_ion_unitaries(t);
  json spec;
  spec["d_system"] = 4;
  spec["d_env"] = 2;
  spec["unitaries"] = json::array();
  for (const auto& u : v) spec["unitaries"].push_back(cli::to_json(u));
  spec["env_state"] = json::array({json::array({1, 0}), json::array({0, 0})});
  const std::string path = write_temp("deph_cli_trapped.json", spec.dump());
  const Result r = run_cli({"witness", "--input", path, "--coherent"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_GT(j.at("q_a").get<double>(), 1e-2);
  EXPECT_GT(j.at("negativity").get<double>(), 0.0);
  EXPECT_FALSE(j.at("criteria").at("zero_discord").at("pass").get<bool>());
}

TEST(CliWitness, NonUnitaryNamesIndex) {
  const Result r = run_cli({"witness", "--input", data("non_unitary.json")});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("$.unitaries[1]"), std::string::npos) << r.err;
}

TEST(CliWitness, PhiForm) {
  json spec;
  spec["phi"] = json::array({json::array({1, json::array({0, 1})}), json::array({json::array({0, -1}), 1})});
  const std::string path = write_temp("deph_cli_phi.json", spec.dump());
  const Result r = run_cli({"witness", "--input", path});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out).at("q_a").get<double>(), 0.0, 1e-9);
}

TEST(CliWitness, MalformedJson) {
  const std::string path = write_temp("deph_cli_bad.json", "{\"d_system\": 2,");
  EXPECT_EQ(run_cli({"witness", "--input", path}).code, cli::kExitInput);
  const std::string missing = write_temp("deph_cli_missing.json", "{\"d_system\": 2, \"d_env\": 2}");
  const Result r = run_cli({"witness", "--input", missing});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("unitaries"), std::string::npos);
}

TEST(CliGravity, ZeroTemperatureRejected) {
  const Result r = run_cli({"gravity", "--temp", "0"});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("--temp must be positive"), std::string::npos) << r.err;
}

TEST(CliGravity, DefaultsAndConfigOverride) {
  const Result r = run_cli({"gravity", "--baseline-samples", "0", "--restarts", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("time").get<double>(), 314.159, 1e-3);
  EXPECT_GT(j.at("max_coherence_decay").get<double>(), 5e-6);

  const std::string cfg = write_temp("deph_cli_gravity.json", R"({"omega": 0.02, "temp": 2e-3})");
  const Result o = run_cli({"gravity", "--config", cfg, "--omega", "0.01", "--baseline-samples", "0", "--restarts", "2"});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const json p = json::parse(o.out).at("params");
  EXPECT_NEAR(json::parse(o.out).at("time").get<double>(), 314.159, 1e-3);  // flag beats config
  EXPECT_GT(p.at("n_bar").get<double>(), 2.0e10);                           // temp from config

  const std::string bad = write_temp("deph_cli_gravity_bad.json", R"({"mass": 1})");
  EXPECT_EQ(run_cli({"gravity", "--config", bad}).code, cli::kExitInput);
}

TEST(CliHeFit, FitsAlpha) {
  const Result r = run_cli({"he-fit", "--input", data("fit.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out).at("alpha").get<double>(), 1.0, 1e-9);
}

TEST(CliHeFit, MalformedCsvReportsLine) {
  const Result r = run_cli({"he-fit", "--input", data("malformed.csv")});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("malformed.csv:3"), std::string::npos) << r.err;
}

TEST(CliScan, CsvAndSummary) {
  const std::string summary = (std::filesystem::temp_directory_path() / "deph_cli_summary.json").string();
  const Result r = run_cli({"scan", "--d-system", "4", "--samples", "6", "--restarts", "3", "--summary", summary});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 7u);
  EXPECT_EQ(l[0], "sample,qa,negativity");
  std::ifstream in(summary);
  const json s = json::parse(in);
  EXPECT_EQ(s.at("samples").get<int>(), 6);
  EXPECT_EQ(s.at("witness_violations").get<int>(), 0);
}

TEST(CliErrors, ParseFailures) {
  EXPECT_EQ(run_cli({}).code, cli::kExitInput);
  EXPECT_EQ(run_cli({"teleport"}).code, cli::kExitInput);
  EXPECT_EQ(run_cli({"scan", "--log-base", "10"}).code, cli::kExitInput);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}
