#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revseq/bool_expr.hpp"
#include "revseq/gate.hpp"
#include "revseq/gate_file.hpp"
#include "revseq/metrics.hpp"
#include "revseq/netlist.hpp"
#include "revseq/reproduce.hpp"
#include "revseq/simulator.hpp"

namespace py = pybind11;
using namespace revseq;

namespace {

py::dict to_dict(const NamedBits& bits) {
  py::dict d;
  for (std::size_t i = 0; i < bits.size(); ++i) d[py::str(bits.name(i))] = bits.value(i);
  return d;
}

Assignment to_assignment(const std::map<std::string, bool>& m) { return Assignment(m.begin(), m.end()); }

py::dict step_dict(const StepResult& r) {
  py::dict d;
  d["outputs"] = to_dict(r.outputs);
  d["next_state"] = to_dict(r.next_state);
  d["wires"] = to_dict(r.wires);
  return d;
}

py::dict metrics_dict(const MetricsReport& r) {
  py::dict d;
  d["circuit"] = r.circuit;
  d["gates"] = r.gate_count;
  d["constant_inputs"] = r.constant_inputs;
  d["garbage_declared"] = r.garbage_declared;
  d["garbage_strict"] = r.garbage_strict;
  d["delay"] = r.delay;
  py::dict cls;
  for (const auto& oc : r.classification) cls[py::str(oc.wire)] = std::string(role_name(oc.role));
  d["classification"] = cls;
  return d;
}

GateRegistry registry_with(const std::optional<std::string>& gate_text) {
  GateRegistry reg = builtin_library();
  if (gate_text) {
    for (auto& g : parse_gate_file(*gate_text)) reg.put(std::move(g));
  }
  return reg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reversible sequential logic workbench";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
  py::register_exception<LookupError>(m, "LookupError", PyExc_KeyError);
  py::register_exception<DefinitionError>(m, "DefinitionError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<OscillationError>(m, "OscillationError", PyExc_RuntimeError);

  m.def("parse_expr", [](const std::string& text) { return format_expr(parse_expr(text)); },
        "Parse and return the canonical rendering.");
  m.def("eval_expr", [](const std::string& text, const std::map<std::string, bool>& env) {
    return eval_expr(parse_expr(text), to_assignment(env));
  });
  m.def("expr_vars", [](const std::string& text) { return expr_vars(parse_expr(text)); });

  py::class_<Gate>(m, "Gate")
      .def_property_readonly("name", &Gate::name)
      .def_property_readonly("arity", &Gate::arity)
      .def_property_readonly("input_names", &Gate::input_names)
      .def_property_readonly("output_names", &Gate::output_names)
      .def("eval", py::overload_cast<Word>(&Gate::eval, py::const_))
      .def("truth_table", [](const Gate& g) { return truth_table(g).outputs; },
           "Output word for each input word, first line most significant.")
      .def("is_bijective", [](const Gate& g) { return is_bijective(truth_table(g)).bijective; })
      .def("inverse", [](const Gate& g) { return inverse_gate(g); })
      .def("__repr__", [](const Gate& g) { return "<Gate " + g.name() + " " + std::to_string(g.arity()) + "x" +
                                                  std::to_string(g.arity()) + ">"; });

  m.def("gate_names", [] {
    std::vector<std::string> names;
    for (const auto& g : builtin_library().gates()) names.push_back(g.name());
    return names;
  });
  m.def("gate", [](const std::string& name) { return builtin_library().at(name); });
  m.def("parse_gates", &parse_gate_file);
  m.def("is_bijective", [](const std::vector<Word>& outputs) {
    unsigned arity = 0;
    while ((std::size_t{1} << arity) < outputs.size()) ++arity;
    TruthTable t{arity, {}, {}, outputs};
    const auto r = is_bijective(t);
    return py::make_tuple(r.bijective, r.witness ? py::cast(*r.witness) : py::none());
  });

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("name", &Circuit::name)
      .def("__str__", &format_circuit);
  m.def("parse_circuit", &parse_circuit);
  m.def("builtin_design", &builtin_design);
  m.def("builtin_design_names", &builtin_design_names);
  m.def("validate", [](const Circuit& c, bool strict_fanout) {
    std::vector<std::string> out;
    for (const auto& d : validate(c, builtin_library(), {strict_fanout})) out.push_back(d.str());
    return out;
  }, py::arg("circuit"), py::arg("strict_fanout") = false);

  py::class_<Simulator>(m, "Simulator")
      .def(py::init([](const Circuit& c, std::optional<std::string> gates) {
             return Simulator(c, registry_with(gates));
           }),
           py::arg("circuit"), py::arg("gates") = py::none())
      .def_property_readonly("input_names", &Simulator::input_names)
      .def_property_readonly("state_names", &Simulator::state_names)
      .def("eval", [](const Simulator& s, const std::map<std::string, bool>& in,
                      const std::map<std::string, bool>& st) { return step_dict(s.eval(to_assignment(in), to_assignment(st))); })
      .def("settle", [](const Simulator& s, const std::map<std::string, bool>& in, const std::map<std::string, bool>& st) {
        const auto r = s.settle(to_assignment(in), to_assignment(st));
        py::dict d;
        d["stable"] = r.stable();
        d["state"] = to_dict(r.state);
        d["iterations"] = r.iterations;
        d["period"] = r.period;
        return d;
      })
      .def("run", [](const Simulator& s, const std::vector<std::map<std::string, bool>>& stim, bool settle) {
        std::vector<Assignment> steps;
        for (const auto& a : stim) steps.push_back(to_assignment(a));
        py::list out;
        for (const auto& st : s.run(steps, settle).steps) out.append(step_dict(st.result));
        return out;
      }, py::arg("stimulus"), py::arg("settle") = false)
      .def("next_state_table", [](const Simulator& s) {
        py::list rows;
        for (const auto& r : s.next_state_table().rows) {
          rows.append(py::make_tuple(r.inputs, r.state, r.outputs, r.next_state));
        }
        return rows;
      }, "Rows of (input word, state word, output bits, next-state bits).")
      .def("verify", [](const Simulator& s, const std::string& oracle, const std::string& target) {
        const auto r = s.verify_characteristic(parse_expr(oracle), target);
        py::dict d;
        d["passed"] = r.passed();
        d["rows"] = r.rows_checked;
        py::list fails;
        for (const auto& f : r.failures) fails.append(py::make_tuple(f.inputs, f.state, f.expected, f.actual));
        d["failures"] = fails;
        return d;
      })
      .def("metrics", [](const Simulator& s) { return metrics_dict(compute_metrics(s)); });

  m.def("reproduce", [](const std::vector<int>& tables) {
    const auto r = reproduce(ReproduceInputs::defaults(), tables);
    py::dict d;
    d["ok"] = r.ok;
    d["diffs"] = r.diffs;
    d["notes"] = r.notes;
    py::dict files;
    for (const auto& [name, content] : r.files) files[py::str(name)] = content;
    d["files"] = files;
    return d;
  }, py::arg("tables") = std::vector<int>{1, 2, 3, 4, 5, 6});
}
