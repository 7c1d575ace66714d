#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "septrace/textio.hpp"

using namespace septrace;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("septrace_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("string files round trip with their sidecar") {
  TempDir tmp;
  const BitString bits = "0100100001";
  write_string_file(tmp.path("x.txt"), bits, StringFileMeta{10, 3, 3, 99});
  CHECK(read_string_file(tmp.path("x.txt")) == bits);
  auto meta = read_string_meta(tmp.path("x.txt"));
  REQUIRE(meta.has_value());
  CHECK(meta->n == 10);
  CHECK(meta->L == 3);
  CHECK(meta->t == 3);
  CHECK(meta->seed == 99);

  CHECK_FALSE(read_string_meta(tmp.path("missing.txt")).has_value());
  CHECK_THROWS(read_string_file(tmp.path("missing.txt")));
}

TEST_CASE("trace files carry an exact header") {
  TempDir tmp;
  std::vector<BitString> lines = {"0101", "011", "01"};
  TraceFileHeader header{4, 0.05, 77, 3, std::nullopt};
  write_trace_file(tmp.path("t.txt"), header, lines);

  // Header line is pinned: `# n=<n> delta=<delta> seed=<seed> count=<N>`.
  std::ifstream in(tmp.path("t.txt"));
  std::string first;
  std::getline(in, first);
  CHECK(first == "# n=4 delta=0.05 seed=77 count=3");

  TraceFile file = read_trace_file(tmp.path("t.txt"));
  CHECK(file.header.n == 4);
  CHECK(file.header.delta == 0.05);
  CHECK(file.header.seed == 77);
  CHECK(file.header.count == 3);
  CHECK_FALSE(file.header.pad.has_value());
  CHECK(file.lines == lines);
}

TEST_CASE("padded trace files record the padding") {
  TempDir tmp;
  std::vector<BitString> lines = {"00100"};
  TraceFileHeader header{1, 0.0, 5, 1, 2};
  write_trace_file(tmp.path("p.txt"), header, lines);
  TraceFile file = read_trace_file(tmp.path("p.txt"));
  REQUIRE(file.header.pad.has_value());
  CHECK(*file.header.pad == 2);
}

TEST_CASE("trace file parsing rejects malformed input") {
  TempDir tmp;
  {
    std::ofstream out(tmp.path("bad1.txt"));
    out << "0101\n";  // no header
  }
  CHECK_THROWS(read_trace_file(tmp.path("bad1.txt")));
  {
    std::ofstream out(tmp.path("bad2.txt"));
    out << "# n=4 delta=0.1 seed=1 count=2\n0101\n";  // count mismatch
  }
  CHECK_THROWS(read_trace_file(tmp.path("bad2.txt")));
  {
    std::ofstream out(tmp.path("bad3.txt"));
    out << "# n=4 delta=0.1 seed=1 count=1\n01x1\n";  // non-bit characters
  }
  CHECK_THROWS(read_trace_file(tmp.path("bad3.txt")));
}

TEST_CASE("format_double round trips") {
  for (double v : {0.05, 1e-7, 1.0 / 3.0, 0.0, 123456.75}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("experiment reports are deterministic apart from timing") {
  ExperimentConfig cfg;
  cfg.n = 600;
  cfg.L = 30;
  cfg.t = 8;
  cfg.delta = 0.05;
  cfg.master_seed = 12345;
  cfg.coarse_reps = 16;
  cfg.fine_traces = 200;
  cfg.t_traces = 50;
  cfg.repetitions = 2;

  ExperimentReport r1 = run_experiment(cfg);
  ExperimentReport r2 = run_experiment(cfg);
  CHECK(experiment_json(r1, false).dump() == experiment_json(r2, false).dump());

  // Aggregate fields must be recomputable from the repetition records.
  nlohmann::json j = experiment_json(r1);
  int64_t successes = 0;
  for (const auto& rep : j["repetitions"]) {
    if (rep["success"].get<bool>()) ++successes;
  }
  CHECK(j["aggregate"]["successes"].get<int64_t>() == successes);
  CHECK(j["aggregate"]["repetitions"].get<int64_t>() ==
        static_cast<int64_t>(j["repetitions"].size()));
  CHECK(j.contains("timing"));
  CHECK_FALSE(experiment_json(r1, false).contains("timing"));
}

TEST_CASE("experiment configs round trip through JSON") {
  ExperimentConfig cfg;
  cfg.n = 12345;
  cfg.L = 321;
  cfg.t = 17;
  cfg.delta = 0.05;
  cfg.master_seed = 0xDEADBEEFCAFEULL;
  cfg.coarse_reps = 48;
  cfg.fine_traces = 7777;
  cfg.t_traces = 901;
  cfg.c0 = 1.25;
  cfg.log_base = LogBase::base2;
  cfg.n_ref = 4096;
  cfg.min_success_fraction = 0.55;
  cfg.repetitions = 3;

  ExperimentConfig back = experiment_config_from_json(experiment_config_json(cfg));
  CHECK(experiment_config_json(back).dump() == experiment_config_json(cfg).dump());
  CHECK(back.delta == cfg.delta);
  CHECK(back.master_seed == cfg.master_seed);
  CHECK(back.log_base == cfg.log_base);
}

TEST_CASE("suite reports serialize") {
  SuiteReport report{"demo", {{"check-a", true, 1.0, 2.0, "note"}}};
  nlohmann::json j = suite_json(report);
  CHECK(j["suite"] == "demo");
  CHECK(j["pass"] == true);
  CHECK(j["checks"][0]["name"] == "check-a");
}
