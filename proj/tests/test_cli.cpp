#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return GEOCUT_CLI_PATH; }

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "geocut_cli_stdout.txt";
  const std::string cmd =
      std::string(cli_path()) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  return r;
}

fs::path write_config(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "geocut_cli_tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << content;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("unknown subcommand and bad config exit with 2") {
  CHECK(run_cli("definitely_not_a_subcommand").exit_code == 2);
  CHECK(run_cli("quality --config /nonexistent.json").exit_code == 2);

  const fs::path bad = write_config("bad.json", "{ not json");
  CHECK(run_cli("sample --config " + bad.string()).exit_code == 2);

  // valid json, missing required field
  const fs::path missing = write_config("missing.json", "{\"n\": 10}");
  CHECK(run_cli("sample --config " + missing.string()).exit_code == 2);
}

TEST_CASE("quality subcommand prints the hand-computed fixture record") {
  const fs::path cfg = write_config("quality_line.json", R"({
    "points": [[0], [1], [3]],
    "graph": {"kind": "knn_directed", "k": 1},
    "hyperplane": {"axis": 0, "offset": 0.5}
  })");
  const fs::path out = fs::temp_directory_path() / "geocut_cli_tests/quality";
  const RunResult r =
      run_cli("quality --config " + cfg.string() + " --output-dir " + out.string());
  CHECK(r.exit_code == 0);
  // cut=2, vol+=2, vol-=1, ncut=3, cheeger=2
  CHECK(r.stdout_text.find("\n2,2,1,3,2,") != std::string::npos);
  CHECK(fs::exists(out / "quality.json"));
}

TEST_CASE("runtime errors exit with 1 and the module error name") {
  // k >= n triggers KTooLarge inside the graph module
  const fs::path cfg = write_config("ktoolarge.json", R"({
    "points": [[0], [1], [3]],
    "graph": {"kind": "knn_directed", "k": 3},
    "hyperplane": {"axis": 0, "offset": 0.5}
  })");
  CHECK(run_cli("quality --config " + cfg.string()).exit_code == 1);
}

TEST_CASE("sweep on example1 yields two distinct best offsets") {
  const fs::path cfg = write_config("sweep_ex1.json", R"({
    "density": "example1",
    "families": ["knn_unweighted", "r_unweighted"],
    "offsets": {"start": -0.7, "stop": 1.19, "step": 0.005}
  })");
  const fs::path out = fs::temp_directory_path() / "geocut_cli_tests/sweep";
  const RunResult r =
      run_cli("sweep --config " + cfg.string() + " --output-dir " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "curve_knn.csv"));
  CHECK(fs::exists(out / "curve_r.csv"));
  const std::string summary = slurp(out / "summary.json");
  // frozen fixtures from the fine-grid run: ~0.2865 vs ~0.7655
  CHECK(summary.find("\"best_offset\": 0.28") != std::string::npos);
  CHECK(summary.find("\"best_offset\": 0.76") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  const fs::path cfg = write_config("sample_det.json", R"({
    "density": "example3", "n": 200, "seed": 17
  })");
  const fs::path out1 = fs::temp_directory_path() / "geocut_cli_tests/det1";
  const fs::path out2 = fs::temp_directory_path() / "geocut_cli_tests/det2";
  CHECK(run_cli("sample --config " + cfg.string() + " --output-dir " +
                out1.string())
            .exit_code == 0);
  CHECK(run_cli("sample --config " + cfg.string() + " --output-dir " +
                out2.string())
            .exit_code == 0);
  CHECK(slurp(out1 / "points.csv") == slurp(out2 / "points.csv"));

  // the seed flag overrides the config and changes the sample
  const fs::path out3 = fs::temp_directory_path() / "geocut_cli_tests/det3";
  CHECK(run_cli("sample --config " + cfg.string() + " --output-dir " +
                out3.string() + " --seed 18")
            .exit_code == 0);
  CHECK(slurp(out1 / "points.csv") != slurp(out3 / "points.csv"));
}

TEST_CASE("graph dump then spectral on the dumped points") {
  const fs::path cfg = write_config("graph_small.json", R"({
    "density": "example3", "n": 120, "seed": 4,
    "graph": {"kind": "knn_symmetric", "k": 12}
  })");
  const fs::path out = fs::temp_directory_path() / "geocut_cli_tests/graph";
  const RunResult r =
      run_cli("graph --config " + cfg.string() + " --output-dir " + out.string());
  CHECK(r.exit_code == 0);
  const std::string dump = slurp(out / "graph.csv");
  CHECK(dump.rfind("# n=120 directed=0 kind=knn_symmetric", 0) == 0);

  const RunResult s = run_cli("spectral --config " + cfg.string() +
                              " --output-dir " + out.string());
  CHECK(s.exit_code == 0);
  CHECK(fs::exists(out / "labels.csv"));
  CHECK(fs::exists(out / "spectral.json"));
}

TEST_CASE("limits subcommand emits the analytic uniform values") {
  const fs::path cfg = write_config("limits_uniform.json", R"({
    "density": "uniform01",
    "hyperplane": {"axis": 0, "offset": 0.5},
    "family": "r_unweighted"
  })");
  const fs::path out = fs::temp_directory_path() / "geocut_cli_tests/limits";
  const RunResult r =
      run_cli("limits --config " + cfg.string() + " --output-dir " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"ncut_lim\": 2") != std::string::npos);
  CHECK(r.stdout_text.find("\"cheeger_lim\": 1") != std::string::npos);
}

TEST_CASE("compare subcommand writes the results directory") {
  const fs::path cfg = write_config("compare_small.json", R"({
    "density": "example3", "n": 150, "reps": 3, "k": 12, "base_seed": 2
  })");
  const fs::path out = fs::temp_directory_path() / "geocut_cli_tests/compare";
  const RunResult r = run_cli("compare --config " + cfg.string() +
                              " --output-dir " + out.string() + " --threads 2");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "config.json"));
  CHECK(fs::exists(out / "results.csv"));
  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "boundaries.csv"));
  const std::string results = slurp(out / "results.csv");
  CHECK(results.find("knn,0,1,") != std::string::npos);
  CHECK(results.find("cross_same_rep,2,2,") != std::string::npos);
}
