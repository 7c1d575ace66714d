#include "septrace/textio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace septrace {

namespace {

std::string meta_path(const std::string& path) { return path + ".meta.json"; }

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& line : lines) out << line << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// key=value tokens from a `# ...` header line.
void parse_header_tokens(const std::string& line, TraceFileHeader& header, bool& saw_padded) {
  std::istringstream in(line.substr(1));
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "n") {
      header.n = std::stoll(value);
    } else if (key == "delta") {
      header.delta = std::stod(value);
    } else if (key == "seed") {
      header.seed = std::stoull(value);
    } else if (key == "count") {
      header.count = std::stoll(value);
    } else if (key == "padded") {
      saw_padded = saw_padded || value != "0";
    } else if (key == "L") {
      header.pad = std::stoll(value);
    }
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

void write_string_file(const std::string& path, const BitString& bits,
                       const std::optional<StringFileMeta>& meta) {
  if (!is_bit_string(bits)) throw std::invalid_argument("refusing to write a non-bitstring");
  write_lines(path, {bits});
  if (meta) {
    nlohmann::json j{{"n", meta->n}, {"L", meta->L}, {"t", meta->t}, {"seed", meta->seed}};
    write_lines(meta_path(path), {j.dump(2)});
  }
}

BitString read_string_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (!is_bit_string(line)) throw std::runtime_error("not a bitstring line in " + path);
    return line;
  }
  throw std::runtime_error("no bitstring found in " + path);
}

std::optional<StringFileMeta> read_string_meta(const std::string& path) {
  std::ifstream in(meta_path(path), std::ios::binary);
  if (!in) return std::nullopt;
  nlohmann::json j;
  in >> j;
  StringFileMeta meta;
  meta.n = j.value("n", int64_t{0});
  meta.L = j.value("L", int64_t{0});
  meta.t = j.value("t", int64_t{0});
  meta.seed = j.value("seed", uint64_t{0});
  return meta;
}

void write_trace_file(const std::string& path, const TraceFileHeader& header,
                      std::span<const BitString> lines) {
  std::vector<std::string> out;
  out.reserve(lines.size() + 2);
  std::ostringstream head;
  head << "# n=" << header.n << " delta=" << format_double(header.delta)
       << " seed=" << header.seed << " count=" << header.count;
  out.push_back(head.str());
  if (header.pad) {
    std::ostringstream pad_line;
    pad_line << "# padded=1 L=" << *header.pad;
    out.push_back(pad_line.str());
  }
  for (const auto& line : lines) out.push_back(line);
  write_lines(path, out);
}

TraceFile read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  TraceFile file;
  bool saw_header = false;
  bool saw_padded = false;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      parse_header_tokens(line, file.header, saw_padded);
      saw_header = true;
      continue;
    }
    if (!is_bit_string(line)) throw std::runtime_error("not a bitstring line in " + path);
    file.lines.push_back(line);
  }
  if (!saw_header) throw std::runtime_error("missing `# n=... delta=...` header in " + path);
  if (!saw_padded) file.header.pad.reset();
  if (file.header.count != static_cast<int64_t>(file.lines.size())) {
    throw std::runtime_error("trace count mismatch in " + path);
  }
  return file;
}

nlohmann::json suite_json(const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"bound", c.bound},
                      {"note", c.note}});
  }
  return {{"suite", report.suite}, {"pass", report.pass()}, {"checks", checks}};
}

nlohmann::json experiment_config_json(const ExperimentConfig& c) {
  return {{"n", c.n},
          {"L", c.L},
          {"t", c.t},
          {"delta", c.delta},
          {"master_seed", c.master_seed},
          {"coarse_reps", c.coarse_reps},
          {"fine_traces", c.fine_traces},
          {"t_traces", c.t_traces},
          {"c0", c.c0},
          {"log_base", c.log_base == LogBase::natural ? "natural" : "base2"},
          {"n_ref", c.n_ref},
          {"min_success_fraction", c.min_success_fraction},
          {"repetitions", c.repetitions}};
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.n = j.at("n").get<int64_t>();
  c.L = j.at("L").get<int64_t>();
  c.t = j.at("t").get<int64_t>();
  c.delta = j.at("delta").get<double>();
  c.master_seed = j.at("master_seed").get<uint64_t>();
  c.coarse_reps = j.at("coarse_reps").get<int64_t>();
  c.fine_traces = j.at("fine_traces").get<int64_t>();
  c.t_traces = j.at("t_traces").get<int64_t>();
  c.c0 = j.at("c0").get<double>();
  std::string base = j.at("log_base").get<std::string>();
  if (base != "natural" && base != "base2") throw std::runtime_error("bad log_base: " + base);
  c.log_base = base == "natural" ? LogBase::natural : LogBase::base2;
  c.n_ref = j.at("n_ref").get<int64_t>();
  c.min_success_fraction = j.at("min_success_fraction").get<double>();
  c.repetitions = j.at("repetitions").get<int64_t>();
  return c;
}

nlohmann::json experiment_json(const ExperimentReport& report, bool include_timing) {
  nlohmann::json config = experiment_config_json(report.config);

  nlohmann::json reps = nlohmann::json::array();
  nlohmann::json timing = nlohmann::json::array();
  for (const RepetitionReport& r : report.repetitions) {
    nlohmann::json rep{{"rep", r.rep},
                       {"seed", r.seed},
                       {"success", r.success},
                       {"t_true", r.t_true},
                       {"t_estimate", r.t_estimate},
                       {"coarse_errors", r.coarse_errors},
                       {"fine_acceptance", r.fine_acceptance}};
    rep["failed_stage"] = r.failed_stage.empty() ? nlohmann::json() : nlohmann::json(r.failed_stage);
    rep["failed_m"] = r.failed_stage.empty() ? nlohmann::json() : nlohmann::json(r.failed_m);
    rep["edit_distance"] = r.edit_dist ? nlohmann::json(*r.edit_dist) : nlohmann::json();
    reps.push_back(rep);
    timing.push_back({{"rep", r.rep},
                      {"seconds_total", r.seconds_total},
                      {"seconds_t_estimate", r.seconds.t_estimate},
                      {"seconds_coarse", r.seconds.coarse},
                      {"seconds_fine", r.seconds.fine}});
  }

  nlohmann::json j{{"config", config},
                   {"repetitions", reps},
                   {"aggregate",
                    {{"successes", report.successes},
                     {"repetitions", static_cast<int64_t>(report.repetitions.size())},
                     {"success_rate", report.success_rate()}}}};
  if (include_timing) j["timing"] = timing;
  return j;
}

}  // namespace septrace
