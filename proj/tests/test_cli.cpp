#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path kWorkDir = fs::temp_directory_path() / "mlcc_cli_tests";

int run_cli(const std::string& args) {
  const std::string command =
      std::string(MLCC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string run_cli_stdout(const std::string& args) {
  const fs::path out = kWorkDir / "stdout.txt";
  const std::string command = std::string(MLCC_CLI_PATH) + " " + args + " > " +
                              out.string() + " 2>/dev/null";
  REQUIRE(std::system(command.c_str()) == 0);
  std::ifstream in(out);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Workspace {
  Workspace() {
    fs::remove_all(kWorkDir);
    fs::create_directories(kWorkDir);
  }
  ~Workspace() { fs::remove_all(kWorkDir); }
};

}  // namespace

TEST_CASE("cli") {
  Workspace workspace;

  SUBCASE("stats on a small fixture") {
    const fs::path csv = kWorkDir / "tiny.csv";
    std::ofstream(csv) << "1.0,0,1\n2.0,1,0\n";
    const std::string output =
        run_cli_stdout("stats --data " + csv.string() + " --label-count 2");
    CHECK(output.find("n=2\n") != std::string::npos);
    CHECK(output.find("d=1\n") != std::string::npos);
    CHECK(output.find("m=2\n") != std::string::npos);
    CHECK(output.find("observation_rate=0.5") != std::string::npos);
  }

  SUBCASE("synth writes train and test files that stats can read") {
    const std::string prefix = (kWorkDir / "syn").string();
    CHECK(run_cli("synth --labels 3 --tau 0.5 --noise 0.1 --train 30 --test 20 "
                  "--seed 5 --out " + prefix) == 0);
    const std::string output = run_cli_stdout(
        "stats --data " + prefix + "_train.csv --label-count 3");
    CHECK(output.find("n=30\n") != std::string::npos);
    CHECK(output.find("d=2\n") != std::string::npos);
  }

  SUBCASE("eval is deterministic byte for byte") {
    const std::string prefix = (kWorkDir / "det").string();
    REQUIRE(run_cli("synth --labels 3 --tau 0.2 --noise 0.1 --train 60 --test 0 "
                    "--seed 9 --out " + prefix) == 0);
    const std::string data = prefix + "_train.csv";
    const fs::path a = kWorkDir / "a.json";
    const fs::path b = kWorkDir / "b.json";
    const std::string flags = "eval --data " + data +
                              " --label-count 3 --algo cc --folds 4 --repeats 2 "
                              "--seed 11 --subset-correction --out ";
    REQUIRE(run_cli(flags + a.string()) == 0);
    REQUIRE(run_cli(flags + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("\"format\": \"mlcc-report\"") != std::string::npos);
  }

  SUBCASE("ttest compares two reports") {
    const std::string prefix = (kWorkDir / "tt").string();
    REQUIRE(run_cli("synth --labels 2 --tau 0.8 --noise 0.1 --train 50 --test 0 "
                    "--seed 3 --out " + prefix) == 0);
    const std::string data = prefix + "_train.csv";
    const fs::path a = kWorkDir / "br.json";
    const fs::path b = kWorkDir / "ns.json";
    REQUIRE(run_cli("eval --data " + data +
                    " --label-count 2 --algo br --folds 4 --repeats 1 --seed 2 --out " +
                    a.string()) == 0);
    REQUIRE(run_cli("eval --data " + data +
                    " --label-count 2 --algo ns --folds 4 --repeats 1 --seed 2 --out " +
                    b.string()) == 0);
    const std::string output =
        run_cli_stdout("ttest --a " + a.string() + " --b " + b.string());
    CHECK(output.find("\"format\": \"mlcc-ttest\"") != std::string::npos);
    CHECK(output.find("\"hamming\"") != std::string::npos);
  }

  SUBCASE("positions and scaling emit csv") {
    const std::string prefix = (kWorkDir / "pos").string();
    REQUIRE(run_cli("synth --labels 3 --tau 1.0 --noise 0.1 --train 80 --test 0 "
                    "--seed 13 --out " + prefix) == 0);
    const fs::path curve = kWorkDir / "curve.csv";
    REQUIRE(run_cli("positions --data " + prefix + "_train.csv --label-count 3 "
                    "--orders 2 --folds 3 --seed 1 --out " + curve.string()) == 0);
    CHECK(slurp(curve).rfind("position,", 0) == 0);

    const fs::path table = kWorkDir / "table.csv";
    REQUIRE(run_cli("scaling --labels 2,3 --reps 2 --train-n 30 --test-n 60 "
                    "--seed 1 --out " + table.string()) == 0);
    CHECK(slurp(table).rfind("m,algorithm,metric,", 0) == 0);
  }

  SUBCASE("invalid flag combinations are rejected") {
    const fs::path csv = kWorkDir / "combo.csv";
    std::ofstream(csv) << "1.0,0\n2.0,1\n3.0,0\n4.0,1\n";
    CHECK(run_cli("eval --data " + csv.string() +
                  " --label-count 1 --algo br --order random --folds 2") != 0);
    CHECK(run_cli("eval --data " + csv.string() +
                  " --label-count 1 --algo br --not-a-flag") != 0);
    CHECK(run_cli("nonsense") != 0);
    CHECK(run_cli("stats --data /nonexistent.csv --label-count 2") != 0);
  }
}
