#pragma once
// File formats and report serialization.
//
// Strings: one ASCII 0/1 line, with a JSON metadata sidecar at
// <path>.meta.json. Traces: a `# key=value` header line followed by one
// ASCII bitstring per line; padded trace files carry a second header line
// recording the padding. Reports: JSON, with timing isolated in its own
// section so that everything else is reproducible byte for byte.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "septrace/core.hpp"
#include "septrace/experiment.hpp"
#include "septrace/validation.hpp"

namespace septrace {

struct StringFileMeta {
  int64_t n = 0;
  int64_t L = 0;
  int64_t t = 0;
  uint64_t seed = 0;
};

void write_string_file(const std::string& path, const BitString& bits,
                       const std::optional<StringFileMeta>& meta);
BitString read_string_file(const std::string& path);
std::optional<StringFileMeta> read_string_meta(const std::string& path);

struct TraceFileHeader {
  int64_t n = 0;
  double delta = 0.0;
  uint64_t seed = 0;
  int64_t count = 0;
  std::optional<int64_t> pad;  // present for padded trace files
};

struct TraceFile {
  TraceFileHeader header;
  std::vector<BitString> lines;
};

void write_trace_file(const std::string& path, const TraceFileHeader& header,
                      std::span<const BitString> lines);
TraceFile read_trace_file(const std::string& path);

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

nlohmann::json suite_json(const SuiteReport& report);
nlohmann::json experiment_json(const ExperimentReport& report, bool include_timing = true);

// Lossless config round trip; the config block inside a report parses
// back to the exact same configuration.
nlohmann::json experiment_config_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

}  // namespace septrace
