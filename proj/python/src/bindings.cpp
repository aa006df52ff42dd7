#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dgk/examples.hpp"
#include "dgk/json_io.hpp"

namespace py = pybind11;
using namespace dgk;

namespace {

Structure parse_structure(const std::string& s) {
  if (s == "G" || s == "g") return Structure::G;
  if (s == "Ghat" || s == "ghat") return Structure::Ghat;
  throw DomainError("structure must be 'G' or 'Ghat', got '" + s + "'");
}

// thin handles so python users never touch raw library types

struct PyExample {
  ExampleInstance inst;
};

struct PyFragment {
  std::shared_ptr<Fragment> frag;
};

struct PyConv {
  ConvElement f;
};

py::object json_to_py(const nlohmann::json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_dgkit, m) {
  m.doc() = "double groupoids from admissible subgroup pairs: exact core bindings";

  py::class_<PyExample>(m, "Example")
      .def_property_readonly("name", [](const PyExample& e) { return e.inst.name; })
      .def_property_readonly("params", [](const PyExample& e) { return e.inst.params; })
      .def(
          "verify",
          [](const PyExample& e, std::uint64_t max_triples, std::uint64_t seed) {
            VerifyOptions opt;
            opt.max_triples = max_triples;
            opt.seed = seed;
            return json_to_py(verify_example(e.inst, opt).to_json());
          },
          py::arg("max_triples") = 50000, py::arg("seed") = 0)
      .def(
          "fragment",
          [](const PyExample& e, const std::string& structure) {
            return PyFragment{std::make_shared<Fragment>(
                Fragment::enumerate(e.inst.pair, parse_structure(structure),
                                    e.inst.h_window(), e.inst.k_window()))};
          },
          py::arg("structure") = "G");

  py::class_<PyFragment>(m, "Fragment")
      .def_property_readonly("size", [](const PyFragment& f) { return f.frag->size(); })
      .def_property_readonly("closed",
                             [](const PyFragment& f) { return f.frag->closed(); })
      .def_property_readonly("structure",
                             [](const PyFragment& f) {
                               return std::string(structure_name(f.frag->tag()));
                             })
      .def("element_keys",
           [](const PyFragment& f) {
             std::vector<std::string> keys;
             for (const auto& x : f.frag->elements()) keys.push_back(x.key());
             return keys;
           })
      .def("unit_keys",
           [](const PyFragment& f) {
             std::vector<std::string> keys;
             for (const auto& x : f.frag->units()) keys.push_back(x.key());
             return keys;
           })
      .def("verify_axioms",
           [](const PyFragment& f) { return json_to_py(f.frag->verify_axioms().to_json()); })
      .def("to_json", [](const PyFragment& f) { return json_to_py(fragment_to_json(*f.frag)); })
      .def("to_dot", [](const PyFragment& f) { return fragment_to_dot(*f.frag); })
      .def(
          "random_element",
          [](const PyFragment& f, std::uint64_t seed, int support, bool complex_coeffs) {
            return PyConv{random_conv_element(f.frag, seed, support, complex_coeffs)};
          },
          py::arg("seed"), py::arg("support") = 5, py::arg("complex_coeffs") = true)
      .def("delta", [](const PyFragment& f, int index) {
        if (index < 0 || static_cast<std::size_t>(index) >= f.frag->size())
          throw DomainError("element index out of range");
        return PyConv{ConvElement::delta(f.frag, f.frag->elements()[index])};
      });

  py::class_<PyConv>(m, "ConvElement")
      .def_property_readonly("support_size",
                             [](const PyConv& c) { return c.f.support_size(); })
      .def("convolve", [](const PyConv& a, const PyConv& b) {
        return PyConv{convolve(a.f, b.f)};
      })
      .def("involution", [](const PyConv& a) { return PyConv{involution(a.f)}; })
      .def("i_norm", [](const PyConv& a) { return i_norm(a.f); })
      .def("reduced_norm",
           [](const PyConv& a) {
             auto r = reduced_norm(a.f);
             return py::make_tuple(r.value, r.certified_radius);
           })
      .def("to_json", [](const PyConv& a) { return json_to_py(conv_to_json(a.f)); })
      .def("__eq__", [](const PyConv& a, const PyConv& b) { return a.f == b.f; });

  m.def("list_examples", &list_examples);
  m.def(
      "build_example",
      [](const std::string& name, const std::map<std::string, std::string>& params) {
        return PyExample{build_example(name, params)};
      },
      py::arg("name"), py::arg("params") = std::map<std::string, std::string>{});
}
