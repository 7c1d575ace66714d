// septrace: instance generation, trace sampling, reconstruction runs,
// parameter sweeps and validation suites.
//
// Exit codes: 0 success, 1 algorithmic failure (a stage failed, a
// reference mismatched, or a validation suite failed), 2 usage/IO errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "septrace/channel.hpp"
#include "septrace/estimation.hpp"
#include "septrace/experiment.hpp"
#include "septrace/textio.hpp"
#include "septrace/validation.hpp"

namespace {

using namespace septrace;

struct GenOptions {
  int64_t n = 0, L = 0, t = 0;
  uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& opt) {
  if (opt.t * (opt.L + 1) > opt.n) {
    std::cerr << "septrace gen: infeasible parameters: need t*(L+1) <= n, got " << opt.t << "*("
              << opt.L << "+1) > " << opt.n << "\n";
    return 2;
  }
  Rng rng(derive_seed(opt.seed, stream_tag::instance, 0));
  SeparatedString x = random_separated(opt.n, opt.L, opt.t, rng);
  write_string_file(opt.out, to_bits(x), StringFileMeta{opt.n, opt.L, opt.t, opt.seed});
  return 0;
}

struct TraceOptions {
  std::string in, out;
  double delta = 0.0;
  int64_t count = 1;
  uint64_t seed = 0;
  bool padded = false;
  int64_t pad = -1;  // -1: take L from the string's sidecar
};

int cmd_trace(const TraceOptions& opt) {
  BitString bits = read_string_file(opt.in);
  SeparatedString x = from_bits(bits);
  int64_t pad_amount = 0;
  if (opt.padded) {
    pad_amount = opt.pad;
    if (pad_amount < 0) {
      auto meta = read_string_meta(opt.in);
      if (!meta) {
        std::cerr << "septrace trace: --padded needs --L or a metadata sidecar\n";
        return 2;
      }
      pad_amount = meta->L;
    }
  }
  ChannelParams params{opt.delta, opt.seed};
  params.check();

  std::vector<BitString> lines;
  lines.reserve(static_cast<size_t>(opt.count));
  for (int64_t i = 0; i < opt.count; ++i) {
    Rng rng = params.stream(static_cast<uint64_t>(i));
    Trace tr = opt.padded ? sample_padded_trace(x, pad_amount, opt.delta, rng)
                          : sample_trace(x, opt.delta, rng);
    lines.push_back(std::move(tr.bits));
  }
  TraceFileHeader header{static_cast<int64_t>(bits.size()), opt.delta, opt.seed, opt.count,
                         opt.padded ? std::optional<int64_t>(pad_amount) : std::nullopt};
  write_trace_file(opt.out, header, lines);
  return 0;
}

struct ReconstructOptions {
  std::string in;  // trace file; empty in live mode
  bool live = false;
  std::string reference;
  std::string out;
  std::string report_path;
  // live-mode instance
  int64_t n = 20000, L = 600, t = 30;
  double delta = 0.05;
  uint64_t seed = 1;
  int64_t reps = 1;
  // budgets and alignment
  int64_t fine_traces = 100000, coarse_reps = 64, t_traces = 10000;
  double c0 = 1.0;
  std::string log_base = "natural";
  int64_t n_ref = 0;
  double min_success = 0.6;
  int64_t pad_override = -1;
};

LogBase parse_log_base(const std::string& name) {
  if (name == "natural") return LogBase::natural;
  if (name == "base2") return LogBase::base2;
  throw CLI::ValidationError("--log-base must be natural or base2");
}

void write_report(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

int reconstruct_live(const ReconstructOptions& opt) {
  ExperimentConfig cfg;
  cfg.n = opt.n;
  cfg.L = opt.L;
  cfg.t = opt.t;
  cfg.delta = opt.delta;
  cfg.master_seed = opt.seed;
  cfg.coarse_reps = opt.coarse_reps;
  cfg.fine_traces = opt.fine_traces;
  cfg.t_traces = opt.t_traces;
  cfg.c0 = opt.c0;
  cfg.log_base = parse_log_base(opt.log_base);
  cfg.n_ref = opt.n_ref;
  cfg.min_success_fraction = opt.min_success;
  cfg.repetitions = opt.reps;
  ChannelParams{cfg.delta, cfg.master_seed}.check();

  ExperimentReport report = run_experiment(cfg);
  write_report(opt.report_path, experiment_json(report));
  for (const RepetitionReport& rep : report.repetitions) {
    std::ostringstream line;
    line << "rep " << rep.rep << ": " << (rep.success ? "success" : "FAIL");
    if (!rep.failed_stage.empty()) line << " at stage " << rep.failed_stage << " m=" << rep.failed_m;
    if (rep.edit_dist && *rep.edit_dist > 0) line << " edit_distance=" << *rep.edit_dist;
    std::cout << line.str() << "\n";
  }
  std::cout << "successes " << report.successes << "/" << report.repetitions.size() << "\n";
  if (!opt.out.empty() && !report.repetitions.empty() && report.repetitions.front().success) {
    write_string_file(opt.out, report.repetitions.front().recovered, std::nullopt);
  }
  return report.successes == static_cast<int64_t>(report.repetitions.size()) ? 0 : 1;
}

int reconstruct_from_file(const ReconstructOptions& opt) {
  TraceFile file = read_trace_file(opt.in);
  const int64_t pad_amount =
      opt.pad_override >= 0 ? opt.pad_override : file.header.pad.value_or(0);

  std::vector<TraceGapProfile> profiles;
  profiles.reserve(file.lines.size());
  for (const auto& line : file.lines) profiles.push_back(profile_of_bits(line));

  PipelineConfig cfg;
  cfg.delta = file.header.delta;  // the header is authoritative
  cfg.align.c0 = opt.c0;
  cfg.align.log_base = parse_log_base(opt.log_base);
  cfg.align.n_ref = opt.n_ref > 0 ? opt.n_ref : std::max<int64_t>(file.header.n + 2 * pad_amount, 2);
  const int64_t count = static_cast<int64_t>(profiles.size());
  cfg.coarse_reps = std::min(opt.coarse_reps, count);
  cfg.fine_traces = count;
  cfg.t_traces = count;
  cfg.min_success_fraction = opt.min_success;

  FixedTraceProvider provider(std::move(profiles), cfg.coarse_reps);
  try {
    ReconstructResult result = reconstruct(provider, cfg, pad_amount, file.header.n);
    int64_t outside = result.coarse.count_outside(
        0.8 * (1.0 - cfg.delta) * static_cast<double>(pad_amount),
        static_cast<double>(file.header.n + 2 * pad_amount));
    if (outside > 0) {
      std::cerr << "septrace: warning: " << outside
                << " coarse estimates outside the plausible range\n";
    }
    if (!opt.out.empty()) write_string_file(opt.out, result.bits, std::nullopt);
    if (!opt.reference.empty()) {
      BitString want = read_string_file(opt.reference);
      if (result.bits != want) {
        std::cerr << "septrace reconstruct: result differs from reference (edit distance "
                  << edit_distance(result.bits, want) << ")\n";
        return 1;
      }
    }
    std::cout << "reconstructed " << result.bits.size() << " bits, t=" << result.t_estimate
              << "\n";
    return 0;
  } catch (const StageFailure& failure) {
    std::cerr << "septrace reconstruct: stage " << failure.stage << " failed at m=" << failure.m
              << ": " << failure.what() << "\n";
    return 1;
  }
}

struct SweepOptions {
  int64_t n = 20000, t = 30;
  std::vector<int64_t> L_values = {600};
  std::vector<double> deltas = {0.05};
  std::vector<double> c0_values = {1.0};
  uint64_t seed = 1;
  int64_t reps = 5;
  int64_t fine_traces = 100000, coarse_reps = 64, t_traces = 10000;
  std::string out;
  bool resume = false;
};

int cmd_sweep(const SweepOptions& opt) {
  const std::string header =
      "n,L,t,delta,c0,repetitions,successes,success_rate,cell_seed";
  std::set<std::string> done;
  bool have_file = opt.resume && std::filesystem::exists(opt.out);
  if (have_file) {
    std::ifstream in(opt.out);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line == header) continue;
      // key = first five columns
      std::istringstream ss(line);
      std::string field, key;
      for (int i = 0; i < 5 && std::getline(ss, field, ','); ++i) key += field + ",";
      done.insert(key);
    }
  }
  std::ofstream out(opt.out, have_file ? std::ios::app : std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + opt.out);
  if (!have_file) out << header << "\n";

  int64_t cell_index = 0;
  for (double delta : opt.deltas) {
    for (int64_t L : opt.L_values) {
      for (double c0 : opt.c0_values) {
        const uint64_t cell_seed =
            derive_seed(opt.seed, stream_tag::cell, static_cast<uint64_t>(cell_index));
        ++cell_index;
        std::ostringstream key;
        key << opt.n << "," << L << "," << opt.t << "," << format_double(delta) << ","
            << format_double(c0) << ",";
        if (done.count(key.str())) continue;

        ExperimentConfig cfg;
        cfg.n = opt.n;
        cfg.L = L;
        cfg.t = opt.t;
        cfg.delta = delta;
        cfg.master_seed = cell_seed;
        cfg.coarse_reps = opt.coarse_reps;
        cfg.fine_traces = opt.fine_traces;
        cfg.t_traces = opt.t_traces;
        cfg.c0 = c0;
        cfg.repetitions = opt.reps;
        ExperimentReport report = run_experiment(cfg);
        out << key.str() << opt.reps << "," << report.successes << ","
            << format_double(report.success_rate()) << "," << cell_seed << "\n";
        out.flush();
      }
    }
  }
  return 0;
}

struct ValidateOptions {
  std::string suite;
  std::string in;  // for `string`
  std::string out;
  uint64_t seed = 0;
  bool have_seed = false;
  int64_t runs = 0;
  int64_t samples = 0;
  std::vector<double> deltas;
};

SuiteReport validate_string_file(const std::string& path) {
  SuiteReport report{"string", {}};
  BitString bits = read_string_file(path);
  report.checks.push_back({"bit-characters", is_bit_string(bits),
                           static_cast<double>(bits.size()), 0, "ASCII 0/1 only"});
  if (auto meta = read_string_meta(path)) {
    SeparatedString x = from_bits(bits);
    report.checks.push_back({"length", static_cast<int64_t>(bits.size()) == meta->n,
                             static_cast<double>(bits.size()), static_cast<double>(meta->n),
                             "length matches sidecar n"});
    report.checks.push_back({"ones", x.t() == meta->t, static_cast<double>(x.t()),
                             static_cast<double>(meta->t), "one count matches sidecar t"});
    bool separated = x.t() <= 1 || x.min_interior_gap() >= meta->L;
    report.checks.push_back({"separation", separated,
                             static_cast<double>(x.t() <= 1 ? meta->L : x.min_interior_gap()),
                             static_cast<double>(meta->L), "interior runs at least L"});
  }
  return report;
}

int cmd_validate(const ValidateOptions& opt) {
  std::vector<SuiteReport> reports;
  auto want = [&](const std::string& name) { return opt.suite == name || opt.suite == "all"; };

  if (opt.suite == "string") {
    if (opt.in.empty()) {
      std::cerr << "septrace validate string: --in is required\n";
      return 2;
    }
    reports.push_back(validate_string_file(opt.in));
  }
  if (want("catalan")) reports.push_back(validate_catalan());
  if (want("never-ahead")) {
    NeverAheadParams p;
    if (opt.have_seed) p.seed = opt.seed;
    if (opt.runs > 0) p.runs = opt.runs;
    if (!opt.deltas.empty()) p.delta = opt.deltas.front();
    reports.push_back(validate_never_ahead(p));
  }
  if (want("behind-bound")) {
    BehindBoundParams p;
    if (opt.have_seed) p.seed = opt.seed;
    if (opt.runs > 0) p.runs = opt.runs;
    if (!opt.deltas.empty()) p.deltas = opt.deltas;
    reports.push_back(validate_behind_bound(p));
  }
  if (want("oracle-mc")) {
    OracleMcParams p;
    if (opt.have_seed) p.seed = opt.seed;
    if (opt.samples > 0) p.mc_samples = opt.samples;
    reports.push_back(validate_oracle_mc(p));
  }
  if (want("ones-count")) {
    OnesCountParams p;
    if (opt.have_seed) p.seed = opt.seed;
    if (opt.samples > 0) p.samples = opt.samples;
    if (!opt.deltas.empty()) p.delta = opt.deltas.front();
    reports.push_back(validate_ones_count(p));
  }
  if (want("fine-soundness")) {
    FineCheckParams p;
    if (opt.have_seed) p.seed = opt.seed;
    if (opt.samples > 0) p.target_accepted = opt.samples;
    if (!opt.deltas.empty()) p.delta = opt.deltas.front();
    reports.push_back(validate_fine_soundness(p));
  }
  if (want("fine-distribution")) {
    FineDistributionParams p;
    if (opt.have_seed) p.base.seed = opt.seed;
    if (opt.samples > 0) p.min_accepted = opt.samples;
    if (!opt.deltas.empty()) p.base.delta = opt.deltas.front();
    reports.push_back(validate_fine_distribution(p));
  }
  if (reports.empty()) {
    std::cerr << "septrace validate: unknown suite '" << opt.suite << "'\n";
    return 2;
  }

  nlohmann::json j = nlohmann::json::array();
  bool all_pass = true;
  for (const SuiteReport& r : reports) {
    j.push_back(suite_json(r));
    all_pass = all_pass && r.pass();
    for (const CheckResult& c : r.checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << c.name
                << "  measured=" << c.measured << " bound=" << c.bound;
      if (!c.note.empty()) std::cout << "  (" << c.note << ")";
      std::cout << "\n";
    }
  }
  write_report(opt.out, j);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace reconstruction for separated strings"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random separated string");
  gen_cmd->add_option("--n", gen.n, "String length")->required();
  gen_cmd->add_option("--L", gen.L, "Separation parameter")->required();
  gen_cmd->add_option("--t", gen.t, "Number of ones")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output string file")->required();

  TraceOptions trace;
  auto* trace_cmd = app.add_subcommand("trace", "Sample traces of a string file");
  trace_cmd->add_option("--in", trace.in, "Input string file")->required();
  trace_cmd->add_option("--delta", trace.delta, "Deletion probability")->required();
  trace_cmd->add_option("--count,--traces", trace.count, "Number of traces");
  trace_cmd->add_option("--seed", trace.seed, "Random seed");
  trace_cmd->add_option("--out", trace.out, "Output trace file")->required();
  trace_cmd->add_flag("--padded", trace.padded, "Pad with L zeros on each end");
  trace_cmd->add_option("--L", trace.pad, "Padding amount (default: sidecar L)");

  ReconstructOptions rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Reconstruct a string from traces");
  rec_cmd->add_option("--in", rec.in, "Trace file to reconstruct from");
  rec_cmd->add_flag("--live", rec.live, "Sample traces on demand from a fresh instance");
  rec_cmd->add_option("--reference", rec.reference, "Reference string file to compare against");
  rec_cmd->add_option("--out", rec.out, "Recovered string file");
  rec_cmd->add_option("--report", rec.report_path, "Experiment report (JSON)");
  rec_cmd->add_option("--n", rec.n, "Instance length (live)");
  rec_cmd->add_option("--L", rec.L, "Separation / padding (live: both; file: pad override)");
  rec_cmd->add_option("--t", rec.t, "Number of ones (live)");
  rec_cmd->add_option("--delta", rec.delta, "Deletion probability (live)");
  rec_cmd->add_option("--seed", rec.seed, "Master seed");
  rec_cmd->add_option("--reps", rec.reps, "Repetitions (live)");
  rec_cmd->add_option("--traces", rec.fine_traces, "Fine-stage trace budget");
  rec_cmd->add_option("--coarse-reps", rec.coarse_reps, "Traces per gap, coarse stage");
  rec_cmd->add_option("--t-traces", rec.t_traces, "Traces used to estimate t");
  rec_cmd->add_option("--c0", rec.c0, "Alignment tolerance multiplier");
  rec_cmd->add_option("--log-base", rec.log_base, "natural or base2");
  rec_cmd->add_option("--n-ref", rec.n_ref, "n used inside log(n); 0 = padded length");
  rec_cmd->add_option("--min-success", rec.min_success, "Coarse success quorum");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Success-rate sweep over delta/L/c0");
  sweep_cmd->add_option("--n", sweep.n, "Instance length");
  sweep_cmd->add_option("--t", sweep.t, "Number of ones");
  sweep_cmd->add_option("--L", sweep.L_values, "Separation values");
  sweep_cmd->add_option("--delta", sweep.deltas, "Deletion probabilities");
  sweep_cmd->add_option("--c0", sweep.c0_values, "Tolerance multipliers");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  sweep_cmd->add_option("--reps", sweep.reps, "Repetitions per cell");
  sweep_cmd->add_option("--traces", sweep.fine_traces, "Fine-stage trace budget");
  sweep_cmd->add_option("--coarse-reps", sweep.coarse_reps, "Traces per gap, coarse stage");
  sweep_cmd->add_option("--t-traces", sweep.t_traces, "Traces used to estimate t");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV")->required();
  sweep_cmd->add_flag("--resume", sweep.resume, "Skip cells already present in the CSV");

  ValidateOptions val;
  auto* val_cmd = app.add_subcommand("validate", "Run a validation suite");
  val_cmd->add_option("suite", val.suite,
                      "catalan | never-ahead | behind-bound | oracle-mc | ones-count | "
                      "fine-soundness | fine-distribution | string | all")
      ->required();
  val_cmd->add_option("--in", val.in, "String file (suite: string)");
  val_cmd->add_option("--out", val.out, "Report JSON path");
  auto* seed_opt = val_cmd->add_option("--seed", val.seed, "Suite seed override");
  val_cmd->add_option("--runs", val.runs, "Run-count override");
  val_cmd->add_option("--samples", val.samples, "Sample-count override");
  val_cmd->add_option("--delta", val.deltas, "Delta override (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  val.have_seed = seed_opt->count() > 0;

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (trace_cmd->parsed()) return cmd_trace(trace);
    if (rec_cmd->parsed()) {
      if (rec.live == !rec.in.empty()) {
        std::cerr << "septrace reconstruct: need exactly one of --in FILE or --live\n";
        return 2;
      }
      return rec.live ? reconstruct_live(rec) : reconstruct_from_file(rec);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (val_cmd->parsed()) return cmd_validate(val);
  } catch (const StageFailure& failure) {
    std::cerr << "septrace: stage " << failure.stage << " failed: " << failure.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "septrace: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
