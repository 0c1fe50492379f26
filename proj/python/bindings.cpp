#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "crier/bench.hpp"
#include "crier/conformance.hpp"
#include "crier/detector.hpp"
#include "crier/error.hpp"
#include "crier/evaluate.hpp"
#include "crier/eventlog.hpp"
#include "crier/loggen.hpp"
#include "crier/patterns.hpp"
#include "crier/stats.hpp"

namespace py = pybind11;
using namespace crier;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
  const auto text =
      py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return nlohmann::json::parse(text);
}

ProcessTree tree_arg(const py::object& o) {
  if (py::isinstance<py::str>(o)) return read_tree_file(o.cast<std::string>());
  return tree_from_json(from_python(o));
}

py::dict report_dict(const DriftReport& r) {
  py::dict out;
  out["sudden"] = r.sudden;
  py::list gradual;
  for (const auto& g : r.gradual) gradual.append(py::make_tuple(g.start, g.end));
  out["gradual"] = gradual;
  out["initial_window"] = r.initial_window;
  py::list confirmations;
  for (const auto& c : r.confirmations) {
    py::dict d;
    d["trace"] = c.trace;
    d["kind"] = to_string(c.kind);
    d["window_end"] = c.window_end;
    d["run_start"] = c.run_start;
    confirmations.append(d);
  }
  out["confirmations"] = confirmations;
  py::list diagnostics;
  for (const auto& w : r.diagnostics) {
    py::dict d;
    d["index"] = w.index;
    d["window_size"] = w.window_size;
    d["fitness"] = py::make_tuple(w.fitness.numerator, w.fitness.denominator);
    d["precision"] =
        py::make_tuple(w.precision.numerator, w.precision.denominator);
    d["candidate_fitness"] = w.candidate_fitness;
    d["candidate_precision"] = w.candidate_precision;
    d["model_id"] = w.model_id;
    diagnostics.append(d);
  }
  out["diagnostics"] = diagnostics;
  return out;
}

DriftReport report_arg(const py::dict& d) {
  DriftReport r;
  if (d.contains("sudden")) r.sudden = d["sudden"].cast<std::vector<std::size_t>>();
  if (d.contains("gradual"))
    for (const auto& g : d["gradual"]) {
      const auto pair = g.cast<std::pair<std::size_t, std::size_t>>();
      r.gradual.push_back({pair.first, pair.second});
    }
  return r;
}

std::vector<Interval> intervals_arg(
    const std::vector<std::pair<std::size_t, std::size_t>>& xs) {
  std::vector<Interval> out;
  for (const auto& [a, b] : xs) out.push_back({a, b});
  return out;
}

ResumePolicy resume_arg(const std::string& name) {
  if (name == "anchored") return ResumePolicy::drift_anchored;
  if (name == "confirming") return ResumePolicy::confirming_window;
  if (name == "jump") return ResumePolicy::jump_ahead;
  throw InvalidArgument("unknown resume policy '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conformance-based concept drift detection for event logs";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<EventLog>(m, "EventLog")
      .def("__len__", &EventLog::size)
      .def("behaviors",
           [](const EventLog& log) {
             std::vector<Behavior> out;
             for (const auto& t : log.traces()) out.push_back(t.behavior());
             return out;
           },
           "Activity sequence of every trace, in log order.")
      .def("case_ids",
           [](const EventLog& log) {
             std::vector<std::string> out;
             for (const auto& t : log.traces()) out.push_back(t.case_id());
             return out;
           })
      .def("variants", [](const EventLog& log) { return log_behavior(log); })
      .def("activities", &EventLog::activities)
      .def("to_csv",
           [](const EventLog& log) {
             std::ostringstream out;
             write_csv(log, out);
             return out.str();
           })
      .def("to_xes", [](const EventLog& log) {
        std::ostringstream out;
        write_xes(log, out);
        return out.str();
      });

  m.def("read_log", &read_log_file, py::arg("path"),
        "Reads a .csv or .xes event log.");
  m.def("parse_csv", [](const std::string& text) { return parse_csv_string(text); },
        py::arg("text"));
  m.def("parse_xes", [](const std::string& text) { return parse_xes_string(text); },
        py::arg("text"));

  m.def(
      "detect",
      [](const EventLog& log, std::size_t min_window, double significance,
         bool fixed_window, const std::string& resume) {
        DetectorConfig config;
        config.min_window = min_window;
        config.significance = significance;
        config.window_growth =
            fixed_window ? WindowGrowth::fixed : WindowGrowth::doubling;
        config.resume = resume_arg(resume);
        DriftReport report;
        {
          py::gil_scoped_release release;
          report = detect(log, config);
        }
        return report_dict(report);
      },
      py::arg("log"), py::arg("min_window") = 50, py::arg("significance") = 0.05,
      py::arg("fixed_window") = false, py::arg("resume") = "anchored",
      "Runs the detector and returns sudden points, gradual intervals and "
      "per-window diagnostics.");

  m.def("adjust_window",
        [](const EventLog& log, std::size_t min_window) {
          return adjust_window(min_window, log.traces());
        },
        py::arg("log"), py::arg("min_window"));

  m.def("discover",
        [](const EventLog& log) { return to_python(to_json(discover(log.traces()))); },
        py::arg("log"), "Variant model of the whole log as a dict.");
  m.def("fitness",
        [](const EventLog& window, const py::object& model) {
          return fitness(window.traces(), model_from_json(from_python(model))).value();
        },
        py::arg("window"), py::arg("model"));
  m.def("precision",
        [](const EventLog& window, const py::object& model) {
          return precision(window.traces(), model_from_json(from_python(model))).value();
        },
        py::arg("window"), py::arg("model"));

  m.def("regress",
        [](const std::vector<double>& series) {
          const auto r = stats::regress(series);
          py::dict d;
          d["slope"] = r.slope;
          d["intercept"] = r.intercept;
          d["stderr_slope"] = r.stderr_slope;
          d["t_stat"] = r.t_defined ? py::cast(r.t_stat) : py::none();
          d["p_value"] = r.p_value;
          d["n_points"] = r.n_points;
          return d;
        },
        py::arg("series"));

  m.def("loanlike_tree", [] { return to_python(to_json(loanlike_tree())); });
  m.def("apply_pattern",
        [](const py::object& tree, const std::string& pattern, std::uint64_t seed) {
          Rng rng(seed);
          return to_python(to_json(apply_pattern(tree_arg(tree), parse_pattern(pattern), rng)));
        },
        py::arg("tree"), py::arg("pattern"), py::arg("seed"),
        "Tree arguments are dicts, a JSON file path, or 'loanlike'.");
  m.def("tree_text", [](const py::object& tree) { return to_text(tree_arg(tree)); },
        py::arg("tree"));

  m.def(
      "generate",
      [](const py::object& base, const py::object& derived,
         const std::optional<std::string>& pattern, const std::string& dist,
         std::size_t drifts, std::uint64_t seed) {
        const ProcessTree b = tree_arg(base);
        ProcessTree d;
        if (pattern)
          d = benchmark_model(b, parse_pattern(*pattern), seed);
        else if (!derived.is_none())
          d = tree_arg(derived);
        else
          throw InvalidArgument("generate needs a derived tree or a pattern");
        auto out = generate_log(b, d, DriftDistribution::parse(dist), drifts, seed);
        return py::make_tuple(std::move(out.log), to_python(to_json(out.truth)));
      },
      py::arg("base") = "loanlike", py::arg("derived") = py::none(),
      py::arg("pattern") = py::none(), py::arg("dist"), py::arg("drifts") = 9,
      py::arg("seed") = 0,
      "Returns (log, truth) where truth is {'log_size', 'regions'}.");

  m.def("expected_truth",
        [](const std::string& dist, std::size_t drifts) {
          return to_python(to_json(expected_truth(DriftDistribution::parse(dist), drifts)));
        },
        py::arg("dist"), py::arg("drifts") = 9);

  m.def("match",
        [](const std::vector<std::pair<std::size_t, std::size_t>>& real,
           const std::vector<std::pair<std::size_t, std::size_t>>& detected) {
          return to_python(to_json(match(intervals_arg(real), intervals_arg(detected))));
        },
        py::arg("real"), py::arg("detected"));
  m.def("evaluate",
        [](const py::dict& report, const py::object& truth) {
          return to_python(to_json(
              evaluate(report_arg(report), truth_from_json(from_python(truth)))));
        },
        py::arg("report"), py::arg("truth"));

  m.def(
      "bench",
      [](std::uint64_t seed, std::size_t drifts, std::size_t min_window,
         std::size_t jobs) {
        BenchConfig config;
        config.seed = seed;
        config.drifts = drifts;
        config.detector.min_window = min_window;
        config.jobs = jobs;
        std::vector<AggregateRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_benchmark(config);
        }
        std::ostringstream csv;
        write_aggregate_csv(rows, csv);
        return csv.str();
      },
      py::arg("seed") = 0, py::arg("drifts") = 9, py::arg("min_window") = 50,
      py::arg("jobs") = 0, "Runs the benchmark grid and returns the aggregate CSV.");
}
