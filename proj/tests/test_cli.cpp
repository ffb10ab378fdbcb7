#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef AROC_CLI_PATH
#error "AROC_CLI_PATH must point at the built binary"
#endif
#ifndef AROC_FIXTURE_CSV
#error "AROC_FIXTURE_CSV must point at the fixture dataset"
#endif

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + AROC_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "aroc_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string fixture_flags = std::string(" --csv \"") + AROC_FIXTURE_CSV +
                                  "\" --status-col status --marker-col gp22 "
                                  "--covariate-col age --negate-marker ";

}  // namespace

TEST_CASE("test command runs end to end and is byte reproducible", "[cli]") {
  const auto out1 = fresh_dir("test1");
  const std::string command =
      "test" + fixture_flags + "--B 80 --grid 100 --seed 7 --out \"" + out1.string() + "\"";
  REQUIRE(run_cli(command) == 0);
  REQUIRE(fs::exists(out1 / "result.json"));
  REQUIRE(fs::exists(out1 / "manifest.json"));
  const std::string result_first = slurp(out1 / "result.json");
  const std::string manifest_first = slurp(out1 / "manifest.json");

  // identical command line + seed => byte-identical outputs
  REQUIRE(run_cli(command) == 0);
  CHECK(slurp(out1 / "result.json") == result_first);
  CHECK(slurp(out1 / "manifest.json") == manifest_first);

  // and the result itself does not depend on where it is written
  const auto out2 = fresh_dir("test2");
  REQUIRE(run_cli("test" + fixture_flags + "--B 80 --grid 100 --seed 7 --out \"" +
                  out2.string() + "\"") == 0);
  CHECK(slurp(out2 / "result.json") == result_first);

  const auto result = nlohmann::json::parse(slurp(out1 / "result.json"));
  CHECK(result.at("schema_version").get<int>() == 1);
  CHECK(result.at("B").get<int>() == 80);
  for (const auto& key : {"L1", "L2", "KS"}) {
    const double p = result.at("p_values").at(key).get<double>();
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  const auto manifest = nlohmann::json::parse(slurp(out1 / "manifest.json"));
  CHECK(manifest.at("command").get<std::string>() == "test");
  CHECK_FALSE(manifest.at("input_digest").get<std::string>().empty());
}

TEST_CASE("a different seed changes the result", "[cli]") {
  const auto out1 = fresh_dir("seed7");
  const auto out2 = fresh_dir("seed8");
  REQUIRE(run_cli("test" + fixture_flags + "--B 40 --grid 60 --seed 7 --out \"" +
                  out1.string() + "\"") == 0);
  REQUIRE(run_cli("test" + fixture_flags + "--B 40 --grid 60 --seed 8 --out \"" +
                  out2.string() + "\"") == 0);
  CHECK(slurp(out1 / "result.json") != slurp(out2 / "result.json"));
}

TEST_CASE("usage errors exit nonzero without writing outputs", "[cli]") {
  const auto out = fresh_dir("usage");
  CHECK(run_cli("test" + fixture_flags + "--B 0 --out \"" + out.string() + "\"") != 0);
  CHECK_FALSE(fs::exists(out / "result.json"));

  CHECK(run_cli("test --out \"" + out.string() + "\"") != 0);  // missing required flags
  CHECK(run_cli("simulate --scenario E --sizes 20,20 --ns 1 --out \"" + out.string() + "\"") !=
        0);
  CHECK(run_cli("bogus") != 0);
}

TEST_CASE("curves command emits the requested conditional curves", "[cli]") {
  const auto out = fresh_dir("curves");
  REQUIRE(run_cli("curves" + fixture_flags +
                  "--at-covariate 40 --at-covariate 55 --at-covariate 70 --grid 80 --out \"" +
                  out.string() + "\"") == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "curves.json"));
  REQUIRE(doc.at("conditional").size() == 3);
  CHECK(doc.at("conditional")[0].at("x").get<double>() == 40.0);
  CHECK(doc.at("roc_curve").at("grid").size() == 80);
  const double auc = doc.at("auc").get<double>();
  const double aauc = doc.at("aauc").get<double>();
  CHECK(auc > 0.5);  // the fixture marker separates the populations
  CHECK(aauc > 0.5);
}

TEST_CASE("simulate with ns=1 yields a 0/1 table", "[cli]") {
  const auto out = fresh_dir("sim");
  REQUIRE(run_cli("simulate --scenario A --sizes 24,24 --ns 1 --B 20 --grid 50 "
                  "--alphas 0.05 --seed 5 --format json --out \"" +
                  out.string() + "\"") == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "rejection_table.json"));
  for (const auto& row : doc.at("rows")) {
    const double prop = row.at("proportion").get<double>();
    CHECK((prop == 0.0 || prop == 1.0));
  }
  REQUIRE(fs::exists(out / "manifest.json"));
}
