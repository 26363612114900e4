// Python bindings for the checker, interpreter, and NI harness.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "p4ifc/corpus.hpp"
#include "p4ifc/ni.hpp"

namespace py = pybind11;
using namespace p4ifc;

namespace {

Lattice resolve_lattice(const std::string& name_or_text) {
  if (name_or_text == "two-point") return Lattice::two_point();
  if (name_or_text == "diamond") return Lattice::diamond();
  return Lattice::parse(name_or_text);
}

struct Session {
  Lattice lattice;
  Program program;
  CheckResult check;

  Session(const std::string& source, const std::string& lattice_arg, const std::string& pc)
      : lattice(resolve_lattice(lattice_arg)) {
    program = parse_program(source, lattice);
    SecurityLabel label = pc.empty() ? lattice.bottom() : lattice.label(pc);
    check = check_program_full(program, lattice, label);
  }
};

py::dict verdict_dict(const Verdict& v) {
  py::dict out;
  out["accepted"] = v.accepted;
  py::list diags;
  for (auto& d : v.diagnostics) {
    py::dict j;
    j["line"] = d.span.line;
    j["col"] = d.span.col;
    j["rule"] = d.rule;
    j["message"] = d.message;
    j["found_label"] = d.found_label ? py::object(py::cast(*d.found_label)) : py::none();
    j["required_label"] =
        d.required_label ? py::object(py::cast(*d.required_label)) : py::none();
    diags.append(j);
  }
  out["diagnostics"] = diags;
  return out;
}

py::dict check_source(const std::string& source, const std::string& lattice,
                      const std::string& pc) {
  Session s(source, lattice, pc);
  return verdict_dict(s.check.verdict);
}

py::dict run_source(const std::string& source, const std::string& lattice,
                    const std::string& pc, const std::string& entries,
                    const std::string& store, bool unchecked) {
  Session s(source, lattice, pc);
  if (!s.check.verdict.accepted && !unchecked)
    throw py::value_error("program is rejected; pass unchecked=True to run it anyway");
  ControlPlane cp;
  if (!entries.empty()) cp = load_entries(entries, s.check.sigs, s.check.top_defs);
  StoreSpec spec;
  if (!store.empty()) spec = parse_store_spec(store, s.check.top_env, s.check.top_defs);
  Runner runner(s.program, cp, s.check.sigs, s.lattice);
  RunResult result = runner.run(spec);
  py::dict out;
  out["dump"] = Runner::dump(result.state, result.sig);
  out["signal"] = result.sig.name();
  return out;
}

py::dict nicheck_source(const std::string& source, const std::string& lattice,
                        const std::string& pc, const std::string& entries,
                        const std::string& observer, int trials, uint64_t seed,
                        bool unchecked) {
  Session s(source, lattice, pc);
  if (!s.check.verdict.accepted && !unchecked)
    throw py::value_error("program is rejected; pass unchecked=True to test it anyway");
  ControlPlane cp;
  if (!entries.empty()) cp = load_entries(entries, s.check.sigs, s.check.top_defs);
  SecurityLabel l = observer.empty() ? s.lattice.bottom() : s.lattice.label(observer);
  NiHarness harness("<source>", s.program, s.check, cp, s.lattice);
  NiReport report = harness.check_noninterference(l, trials, seed);
  py::dict out;
  out["program"] = report.program;
  out["observer"] = report.observer;
  out["trials"] = report.trials;
  out["seed"] = report.seed;
  py::list failures;
  for (auto& f : report.failures) {
    py::dict cx;
    cx["item"] = f.item;
    cx["value_a"] = f.value_a;
    cx["value_b"] = f.value_b;
    cx["store_spec_a"] = f.store_spec_a;
    cx["store_spec_b"] = f.store_spec_b;
    cx["trial_seed"] = f.trial_seed;
    failures.append(cx);
  }
  out["failures"] = failures;
  return out;
}

py::list corpus_cases() {
  py::list out;
  for (auto& c : list_cases()) {
    py::dict j;
    j["name"] = c.name;
    j["source_file"] = c.source_file;
    j["entries_file"] = c.entries_file;
    j["store_file"] = c.store_file;
    j["lattice"] = c.lattice;
    j["check_pc"] = c.check_pc;
    j["expect_accept"] = c.expect_accept;
    py::list diags;
    for (auto& d : c.expected_diags) {
      py::dict e;
      e["rule"] = d.rule;
      e["line"] = d.line;
      diags.append(e);
    }
    j["expected_diags"] = diags;
    j["ni_observers"] = c.ni_observers;
    out.append(j);
  }
  return out;
}

} // namespace

PYBIND11_MODULE(_p4ifc, m) {
  m.doc() = "IFC checker and reference interpreter for annotated control blocks";

  py::register_exception<CompileError>(m, "CompileError");
  py::register_exception<LatticeError>(m, "LatticeError");
  py::register_exception<RuntimeError>(m, "EvalError");

  py::class_<Lattice>(m, "Lattice")
      .def(py::init([](const std::string& name_or_text) {
             return resolve_lattice(name_or_text);
           }),
           py::arg("name_or_text"))
      .def("elements",
           [](const Lattice& l) {
             std::vector<std::string> names;
             for (auto e : l.elements()) names.push_back(l.name(e));
             return names;
           })
      .def("leq",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.leq(l.label(a), l.label(b));
           })
      .def("join",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.name(l.join(l.label(a), l.label(b)));
           })
      .def("meet",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.name(l.meet(l.label(a), l.label(b)));
           })
      .def("bottom", [](const Lattice& l) { return l.name(l.bottom()); })
      .def("top", [](const Lattice& l) { return l.name(l.top()); });

  m.def("check", &check_source, py::arg("source"), py::arg("lattice") = "two-point",
        py::arg("pc") = "");
  m.def("run", &run_source, py::arg("source"), py::arg("lattice") = "two-point",
        py::arg("pc") = "", py::arg("entries") = "", py::arg("store") = "",
        py::arg("unchecked") = false);
  m.def("nicheck", &nicheck_source, py::arg("source"), py::arg("lattice") = "two-point",
        py::arg("pc") = "", py::arg("entries") = "", py::arg("observer") = "",
        py::arg("trials") = 200, py::arg("seed") = 1, py::arg("unchecked") = false);
  m.def("corpus_cases", &corpus_cases);
  m.def("corpus_file", [](const std::string& name) { return corpus_file(name); },
        py::arg("name"));
}
