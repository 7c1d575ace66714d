// Python bindings for the main operations: run-length strings, the
// deletion channel, alignment, the estimation pipeline and the exact
// enumeration oracle.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "septrace/estimation.hpp"
#include "septrace/experiment.hpp"
#include "septrace/instances.hpp"
#include "septrace/oracle.hpp"
#include "septrace/validation.hpp"

namespace py = pybind11;
using namespace septrace;

namespace {

py::object mpz_to_int(const mpz_class& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

AlignConfig make_align_config(double c0, int64_t n_ref, const std::string& log_base) {
  AlignConfig cfg;
  cfg.c0 = c0;
  cfg.n_ref = n_ref;
  if (log_base == "natural") {
    cfg.log_base = LogBase::natural;
  } else if (log_base == "base2") {
    cfg.log_base = LogBase::base2;
  } else {
    throw std::invalid_argument("log_base must be 'natural' or 'base2'");
  }
  cfg.check();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_septrace, m) {
  m.doc() = "Trace reconstruction for separated strings over the deletion channel";

  py::class_<SeparatedString>(m, "SeparatedString")
      .def_readonly("gaps", &SeparatedString::gaps)
      .def_readonly("separation", &SeparatedString::separation)
      .def_property_readonly("t", &SeparatedString::t)
      .def_property_readonly("length", &SeparatedString::length)
      .def("__repr__", [](const SeparatedString& s) {
        std::ostringstream os;
        os << "SeparatedString(t=" << s.t() << ", n=" << s.length() << ")";
        return os.str();
      });

  m.def("from_bits", &from_bits, py::arg("bits"));
  m.def("to_bits", &to_bits, py::arg("s"));
  m.def("reverse_bits", &reverse_bits, py::arg("bits"));
  m.def("gap_sum",
        [](const std::vector<int64_t>& seq, int64_t j, int64_t j2) {
          return gap_sum(seq, j, j2);
        },
        py::arg("seq"), py::arg("j"), py::arg("j2"));
  m.def("random_separated",
        [](int64_t n, int64_t L, int64_t t, uint64_t seed) {
          Rng rng(seed);
          return random_separated(n, L, t, rng);
        },
        py::arg("n"), py::arg("L"), py::arg("t"), py::arg("seed"));
  m.def("pad", &pad, py::arg("s"), py::arg("padding"));

  py::class_<Trace>(m, "Trace")
      .def_readonly("bits", &Trace::bits)
      .def_readonly("retained", &Trace::retained);

  py::class_<TraceGapProfile>(m, "TraceGapProfile")
      .def_readonly("positions", &TraceGapProfile::positions)
      .def_readonly("gaps", &TraceGapProfile::gaps)
      .def_property_readonly("ones", &TraceGapProfile::ones)
      .def("reversed", &TraceGapProfile::reversed);

  m.def("sample_trace",
        [](const SeparatedString& x, double delta, uint64_t seed) {
          Rng rng(seed);
          return sample_trace(x, delta, rng);
        },
        py::arg("x"), py::arg("delta"), py::arg("seed"));
  m.def("sample_padded_trace",
        [](const SeparatedString& x, int64_t padding, double delta, uint64_t seed) {
          Rng rng(seed);
          return sample_padded_trace(x, padding, delta, rng);
        },
        py::arg("x"), py::arg("padding"), py::arg("delta"), py::arg("seed"));
  m.def("gap_profile", &gap_profile, py::arg("trace"));
  m.def("profile_of_bits", &profile_of_bits, py::arg("bits"));

  m.def("threshold",
        [](double b_sum, double c0, int64_t n_ref, const std::string& log_base) {
          return threshold(b_sum, make_align_config(c0, n_ref, log_base));
        },
        py::arg("b_sum"), py::arg("c0"), py::arg("n_ref"), py::arg("log_base") = "natural");

  m.def("align",
        [](const std::vector<int64_t>& trace_gaps, int64_t m, const std::vector<double>& b,
           double c0, int64_t n_ref, const std::string& log_base) -> py::object {
          TraceGapProfile profile = TraceGapProfile::from_gaps(trace_gaps);
          AlignOutcome out =
              align(profile, m, GapEstimates(b), make_align_config(c0, n_ref, log_base));
          if (!out.found) return py::none();
          return py::make_tuple(out.one_index, out.gap);
        },
        py::arg("trace_gaps"), py::arg("m"), py::arg("b"), py::arg("c0"), py::arg("n_ref"),
        py::arg("log_base") = "natural",
        "Returns (one_index, gap) or None when the walk fails.");

  m.def("simulate_process",
        [](const std::vector<int64_t>& a, const std::vector<double>& b, double delta, double c0,
           int64_t n_ref, const std::string& log_base, uint64_t seed) {
          Rng rng(seed);
          ProcessRun run =
              simulate_process(a, GapEstimates(b), delta, make_align_config(c0, n_ref, log_base),
                               rng);
          py::dict out;
          out["kept"] = run.kept;
          out["aligned"] = run.aligned;
          RunClass cls = classify(run, static_cast<int64_t>(a.size()));
          const char* kinds[] = {"exact", "behind", "ahead", "failed"};
          out["outcome"] = kinds[static_cast<int>(cls.kind)];
          out["steps"] = cls.steps;
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("delta"), py::arg("c0"), py::arg("n_ref"),
        py::arg("log_base") = "natural", py::arg("seed") = 0);

  m.def("enumerate_outcomes",
        [](const std::vector<int64_t>& a, const std::vector<double>& b, double delta, double c0,
           int64_t n_ref, const std::string& log_base, std::optional<int64_t> window) {
          OracleConfig ocfg;
          ocfg.window = window;
          BehindDistribution d = enumerate_outcomes(
              a, GapEstimates(b), delta, make_align_config(c0, n_ref, log_base), ocfg);
          py::dict out;
          py::dict offsets;
          for (const auto& [offset, p] : d.by_offset) offsets[py::int_(offset)] = p;
          out["by_offset"] = offsets;
          out["failed"] = d.failed;
          out["pk"] = d.pk;
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("delta"), py::arg("c0"), py::arg("n_ref"),
        py::arg("log_base") = "natural", py::arg("window") = py::none());

  m.def("catalan", [](int64_t k) { return mpz_to_int(catalan(k)); }, py::arg("k"));
  m.def("d_k", [](int64_t k) { return mpz_to_int(d_k(k)); }, py::arg("k"));

  py::register_exception<StageFailure>(m, "StageFailure");

  m.def("estimate_t",
        [](const std::vector<int64_t>& counts, double delta) { return estimate_t(counts, delta); },
        py::arg("ones_counts"), py::arg("delta"));

  m.def("reconstruct_live",
        [](const SeparatedString& x, int64_t padding, double delta, uint64_t seed,
           int64_t coarse_reps, int64_t fine_traces, int64_t t_traces, double c0, int64_t n_ref,
           const std::string& log_base) {
          ChannelProvider provider(x, padding, delta, seed);
          PipelineConfig cfg;
          cfg.align = make_align_config(c0, n_ref > 0 ? n_ref : x.length() + 2 * padding, log_base);
          cfg.delta = delta;
          cfg.coarse_reps = coarse_reps;
          cfg.fine_traces = fine_traces;
          cfg.t_traces = t_traces;
          ReconstructResult result = reconstruct(provider, cfg, padding, x.length());
          py::dict out;
          out["bits"] = result.bits;
          out["t"] = result.t_estimate;
          out["coarse"] = result.coarse.values;
          out["gaps"] = result.padded_gaps;
          return out;
        },
        py::arg("x"), py::arg("padding"), py::arg("delta"), py::arg("seed"),
        py::arg("coarse_reps") = 32, py::arg("fine_traces") = 1000, py::arg("t_traces") = 200,
        py::arg("c0") = 1.0, py::arg("n_ref") = 0, py::arg("log_base") = "natural",
        "Sample padded traces of x on demand and reconstruct it.");
}
