#include "circus/cli.hpp"
#include "circus/compile.hpp"
#include "circus/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace circus;

namespace {

// Python ints are arbitrary precision; go through the decimal string.
py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

Assignment assignment(const VarUniverse& u, const std::map<std::string, bool>& values) {
  return Assignment::from_map(u, values);
}

py::dict diagram_report(const NBdd& d, std::size_t limit) {
  const auto r = classify(d, limit);
  py::dict out;
  out["free"] = r.free;
  out["ordered"] = r.ordered;
  out["unambiguous"] = r.unambiguous ? py::cast(*r.unambiguous) : py::none();
  out["deterministic"] = r.deterministic;
  out["complete"] = r.complete;
  out["forest"] = r.forest;
  out["tree"] = r.tree;
  if (r.ordered) {
    std::vector<std::string> order;
    for (VarId v : r.order) order.push_back(d.universe().name(v));
    out["order"] = order;
  }
  return out;
}

py::dict circuit_report(const Circuit& c) {
  const auto r = classify_syntactic(c);
  py::dict out;
  out["decomposable"] = r.decomposable;
  out["smooth"] = r.smooth;
  out["formula"] = r.formula;
  out["read_once"] = r.read_once;
  return out;
}

std::string table_bits(const TruthTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.rows(); ++i) s.push_back(t[i] ? '1' : '0');
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  // keep the error code reachable from Python
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::module_::import("circus._core").attr("Error");
      py::object exc = cls(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });
  (void)error;

  m.attr("DEFAULT_ORACLE_LIMIT") = kDefaultOracleLimit;

  py::class_<NBdd>(m, "NBdd")
      .def_property_readonly("variables", [](const NBdd& d) { return d.universe().names(); })
      .def_property_readonly("node_count", &NBdd::node_count)
      .def_property_readonly("edge_count", &NBdd::edge_count)
      .def("__len__", &NBdd::size)
      .def("__str__", [](const NBdd& d) { return serialize(d); })
      .def("evaluate",
           [](const NBdd& d, const std::map<std::string, bool>& values) {
             return evaluate(d, assignment(d.universe(), values));
           },
           py::arg("values") = std::map<std::string, bool>{})
      .def("count_runs",
           [](const NBdd& d, const std::map<std::string, bool>& values) {
             return to_py(count_accepting_runs(d, assignment(d.universe(), values)));
           },
           py::arg("values") = std::map<std::string, bool>{})
      .def("truth_table", [](const NBdd& d, std::size_t limit) { return table_bits(diagram_table(d, limit)); },
           py::arg("limit") = kDefaultOracleLimit)
      .def("model_count",
           [](const NBdd& d, std::size_t limit) { return to_py(oracle_count(diagram_table(d, limit))); },
           py::arg("limit") = kDefaultOracleLimit)
      .def("classify", &diagram_report, py::arg("limit") = kDefaultOracleLimit)
      .def("remove_or_nodes", &from_or_bdd);

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("variables", [](const Circuit& c) { return c.universe().names(); })
      .def_property_readonly("gate_count", &Circuit::gate_count)
      .def("__str__", [](const Circuit& c) { return serialize(c); })
      .def("evaluate",
           [](const Circuit& c, const std::map<std::string, bool>& values) {
             return evaluate_circuit(c, assignment(c.universe(), values));
           },
           py::arg("values") = std::map<std::string, bool>{})
      .def("truth_table", [](const Circuit& c, std::size_t limit) { return table_bits(circuit_table(c, limit)); },
           py::arg("limit") = kDefaultOracleLimit)
      .def("model_count",
           [](const Circuit& c, std::size_t limit) { return to_py(oracle_count(circuit_table(c, limit))); },
           py::arg("limit") = kDefaultOracleLimit)
      .def("count_ddnnf",
           [](const Circuit& c, std::size_t limit) {
             return to_py(count_models_smooth_ddnnf(c, CountOptions{limit, false}).value);
           },
           py::arg("limit") = kDefaultOracleLimit)
      .def("smooth", &smooth_circuit)
      .def("condition", &condition, py::arg("partial"))
      .def("classify", &circuit_report)
      .def("is_structured", [](const Circuit& c, const VTree& t) { return check_structured(c, t).ok; });

  py::class_<VTree>(m, "VTree")
      .def("__len__", &VTree::size)
      .def("__str__", [](const VTree& v) { return serialize(v); });
  py::class_<TreeSkeleton>(m, "TreeSkeleton")
      .def("__len__", &TreeSkeleton::size)
      .def("__str__", [](const TreeSkeleton& t) { return serialize(t); });

  py::class_<Nfa>(m, "Nfa")
      .def_property_readonly("alphabet", &Nfa::alphabet)
      .def_property_readonly("state_count", &Nfa::state_count)
      .def("__str__", [](const Nfa& a) { return serialize(a); })
      .def("accepts", [](const Nfa& a, const std::vector<std::string>& w) { return nfa_accepts(a, w); })
      .def("count_runs", [](const Nfa& a, const std::vector<std::string>& w) {
        return to_py(nfa_count_runs(a, to_word(a, w)));
      })
      .def("classify", [](const Nfa& a) {
        const auto r = nfa_classify(a);
        py::dict out;
        out["deterministic"] = r.deterministic;
        out["unambiguous"] = r.unambiguous;
        return out;
      });

  py::class_<Nfta>(m, "Nfta")
      .def_property_readonly("state_count", &Nfta::state_count)
      .def("__str__", [](const Nfta& a) { return serialize(a); })
      .def("classify", [](const Nfta& a) {
        const auto r = nfta_classify(a);
        py::dict out;
        out["deterministic"] = r.deterministic;
        out["unambiguous"] = r.unambiguous;
        return out;
      });

  m.def("parse_nbdd", &parse_nbdd);
  m.def("parse_nnf", &parse_nnf);
  m.def("parse_vtree", &parse_vtree);
  m.def("parse_nfa", &parse_nfa);
  m.def("parse_nfta", &parse_nfta);
  m.def("parse_tree", &parse_tree);
  m.def("detect_kind", [](std::string_view text) { return std::string(to_string(detect_kind(text))); });

  m.def("bdd_to_circuit", [](const NBdd& d, std::size_t limit) {
    auto r = bdd_to_circuit(d, limit);
    return py::make_tuple(std::move(r.circuit), r.vtree ? py::cast(std::move(*r.vtree)) : py::none());
  }, py::arg("diagram"), py::arg("limit") = kDefaultOracleLimit);
  m.def("nfa_provenance", &nfa_provenance, py::arg("automaton"), py::arg("length"));
  m.def("nfta_provenance", [](const Nfta& a, const TreeSkeleton& t) {
    auto r = nfta_provenance(a, t);
    return py::make_tuple(std::move(r.circuit), std::move(r.vtree));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
