#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

// End-to-end checks of the command-line surface via the built binary.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "xrorch_cli_test";
  fs::create_directories(dir);
  const fs::path out_file = dir / "stdout.txt";
  const std::string cmd =
      std::string(XRORCH_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

std::string reference() {
  return (fs::path(XRORCH_SCENARIO_DIR) / "reference.scenario").string();
}

}  // namespace

TEST_CASE("validate accepts the reference scenario") {
  const auto r = run_cli("validate " + reference());
  CHECK(r.exit_code == 0);
}

TEST_CASE("validate rejects a broken scenario with a validation exit code") {
  const fs::path dir = fs::temp_directory_path() / "xrorch_cli_test";
  fs::create_directories(dir);
  const fs::path broken = dir / "broken.scenario";
  {
    std::ifstream in(reference());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    const auto pos = text.find("\"quality\": 0.25");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 15, "\"quality\": 0.35");
    std::ofstream out(broken);
    out << text;
  }
  CHECK(run_cli("validate " + broken.string()).exit_code == 65);
}

TEST_CASE("missing scenario files exit with the no-input code") {
  CHECK(run_cli("validate /nonexistent/path.scenario").exit_code == 66);
}

TEST_CASE("unknown flags exit with the usage code") {
  CHECK(run_cli("run --frobnicate").exit_code == 64);
}

TEST_CASE("run writes the trace files") {
  const fs::path out_dir = fs::temp_directory_path() / "xrorch_cli_run";
  fs::remove_all(out_dir);
  const auto r = run_cli("run " + reference() + " --out " + out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out_dir / "summary.csv"));
  CHECK(fs::exists(out_dir / "candidates.csv"));
  CHECK(fs::exists(out_dir / "trace.json"));

  SUBCASE("format filters the outputs") {
    const fs::path csv_dir = fs::temp_directory_path() / "xrorch_cli_run_csv";
    fs::remove_all(csv_dir);
    REQUIRE(run_cli("run " + reference() + " --out " + csv_dir.string() + " --format csv")
                .exit_code == 0);
    CHECK(fs::exists(csv_dir / "summary.csv"));
    CHECK_FALSE(fs::exists(csv_dir / "trace.json"));
    fs::remove_all(csv_dir);
  }
  fs::remove_all(out_dir);
}

TEST_CASE("run honors the default output directory variable") {
  const fs::path out_dir = fs::temp_directory_path() / "xrorch_cli_envdir";
  fs::remove_all(out_dir);
  const std::string cmd = "XRORCH_OUT_DIR=" + out_dir.string() + " " + XRORCH_CLI_PATH +
                          " run " + reference() + " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(out_dir / "summary.csv"));
  fs::remove_all(out_dir);
}

TEST_CASE("score prints the candidate table of one step") {
  const auto r = run_cli("score " + reference() + " --at-step 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PL5") != std::string::npos);
  CHECK(r.out.find("RAC") != std::string::npos);  // the overloaded edge is called out
  CHECK(r.out.find("PL4") != std::string::npos);
}

TEST_CASE("explain decomposes one candidate term by term") {
  const auto r = run_cli("explain " + reference() + " --at-step 1 --placement PL5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("qos_norm") != std::string::npos);
  CHECK(r.out.find("0.3800") != std::string::npos);
  CHECK(r.out.find("cost_norm") != std::string::npos);
  CHECK(r.out.find("0.3275") != std::string::npos);
  CHECK(r.out.find("ro_norm") != std::string::npos);
  CHECK(r.out.find("f = ") != std::string::npos);
  CHECK(r.out.find("0.3139") != std::string::npos);
  CHECK(r.out.find("UE1") != std::string::npos);  // per-user weight listing
}

TEST_CASE("explain of an unknown placement fails cleanly") {
  CHECK(run_cli("explain " + reference() + " --at-step 1 --placement PL99").exit_code == 65);
}
