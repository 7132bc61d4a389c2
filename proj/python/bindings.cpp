#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modcong/adjgroup.hpp"
#include "modcong/example.hpp"
#include "modcong/io.hpp"

namespace py = pybind11;
using namespace modcong;
using nlohmann::json;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

ApTable table_from(const py::object& src, std::uint64_t bound) {
  if (py::isinstance<py::dict>(src) && !py::dict(src).contains("a_invariants")) return io::aptable_from_json(from_py(src));
  WeierstrassCurve e = py::isinstance<py::dict>(src) ? io::curve_from_json(from_py(src)) : curve_17a1();
  return ap_table(e, std::max<std::uint64_t>(bound, 2));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Congruences between modular forms modulo prime powers";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ArithmeticError>(m, "ArithmeticError", PyExc_ArithmeticError);
  py::register_exception<ResourceBoundExceeded>(m, "ResourceBoundExceeded", PyExc_RuntimeError);

  m.def("curve_17a1", [] { return to_py(io::to_json(curve_17a1())); });

  m.def(
      "ap_table", [](const py::dict& curve, std::uint64_t bound, unsigned jobs) {
        return to_py(io::to_json(ap_table(io::curve_from_json(from_py(curve)), bound, jobs)));
      },
      py::arg("curve"), py::arg("bound"), py::arg("jobs") = 1);

  m.def("quadratic_roots", [](std::int64_t a1, std::int64_t a0, std::uint64_t p, int n) -> py::object {
    PrimePowerModulus mod(p, n);
    auto r = quadratic_roots(ResidueInt(a1, mod), ResidueInt(a0, mod));
    if (!r) return py::none();
    return py::make_tuple(r->first.value(), r->second.value());
  });

  m.def("modulus_exponent_bound", &modulus_exponent_bound, py::arg("divides_p"), py::arg("e"), py::arg("p"));

  m.def("is_auxiliary", [](std::uint64_t q, std::int64_t a_q, std::uint64_t p, int n, std::uint64_t N) -> py::object {
    auto c = is_auxiliary(q, a_q, p, n, N);
    return c ? to_py(io::to_json(*c)) : py::none();
  });

  m.def(
      "search_auxiliary",
      [](const py::object& source, std::uint64_t p, int n, std::uint64_t bound, std::uint64_t N) {
        json out = json::array();
        if (bound >= 2)
          for (const auto& c : search_auxiliary(table_from(source, bound), p, n, bound, N)) out.push_back(io::to_json(c));
        return to_py(out);
      },
      py::arg("source") = py::none(), py::arg("p") = 5, py::arg("n") = 2, py::arg("bound") = 200, py::arg("N") = 17,
      "Certificates q <= bound; source is an a_l table dict, a curve dict, or None for 17a1.");

  m.def("frob_order_pair", &frob_order_pair, py::arg("q"), py::arg("a_q"), py::arg("p"), py::arg("n"));

  m.def(
      "big_image_verdict",
      [](const py::object& source, std::uint64_t N, std::uint64_t p) {
        return to_py(io::to_json(big_image_verdict(table_from(source, 400), N, p)));
      },
      py::arg("source") = py::none(), py::arg("N") = 17, py::arg("p") = 5);

  m.def("classify", [](const py::dict& data) {
    auto d = io::tame_data_from_json(from_py(data));
    return to_py(io::to_json(classify_residual(d.reduce_mod_p())));
  });

  m.def(
      "allowed_reductions",
      [](const py::dict& type, std::uint64_t l, std::uint64_t p, bool unramified_coefficients) {
        auto t = io::integral_type_from_json(from_py(type));
        auto s = unramified_coefficients ? integral_reduction_constraint(t, true, l, p) : allowed_reductions(t, l, p);
        std::vector<std::string> out;
        for (auto x : s) out.push_back(to_string(x));
        return out;
      },
      py::arg("type"), py::arg("l"), py::arg("p"), py::arg("unramified_coefficients") = false);

  m.def("dims", [](const py::dict& c) { return to_py(io::to_json(dims(io::local_case_from_json(from_py(c))))); });

  m.def("plan", [](const py::dict& c) { return to_py(io::to_json(plan_for(io::local_case_from_json(from_py(c))))); });

  m.def(
      "lemma_v",
      [](std::int64_t x, std::int64_t y, std::uint64_t l, std::uint64_t p, int m) {
        PrimePowerModulus mod(p, m);
        auto r = lemma_v_element(ResidueInt(x, mod), ResidueInt(y, mod), l);
        TameLocalData rho(l, ResidueMatrix::from_rows({{static_cast<std::int64_t>(l), x}, {0, 1}}, mod),
                          ResidueMatrix::from_rows({{1, y}, {0, 1}}, mod));
        json C = json::array({{r.C.at(0, 0), r.C.at(0, 1)}, {r.C.at(1, 0), r.C.at(1, 1)}});
        return to_py({{"case", r.lemma_case}, {"v", io::to_json(r.v)}, {"C", C},
                      {"verified", verify_adjustment(rho, r.v, r.C)}});
      },
      py::arg("x"), py::arg("y"), py::arg("l"), py::arg("p"), py::arg("m"));

  m.def("congruent_mod_pn", [](const py::dict& f, const py::dict& g, std::uint64_t p, int n, std::uint64_t sturm) {
    auto a = io::aptable_from_json(from_py(f)), b = io::aptable_from_json(from_py(g));
    std::set<std::uint64_t> excluded;
    for (const auto& [l, k] : a.bad_primes) excluded.insert(l);
    for (const auto& [l, k] : b.bad_primes) excluded.insert(l);
    return congruent_mod_pn(a.ap, b.ap, PrimePowerModulus(p, n), sturm, excluded);
  });

  m.def(
      "level_raising_witness",
      [](const py::dict& newform, std::uint64_t q, int eps, std::uint64_t p, int n, std::uint64_t max_level) {
        WitnessOptions o;
        o.max_level = max_level;
        auto f = io::newform_from_json(from_py(newform));
        WitnessReport r;
        {
          py::gil_scoped_release release;
          r = level_raising_witness(f, q, eps, PrimePowerModulus(p, n), o);
        }
        return to_py(io::to_json(r));
      },
      py::arg("newform"), py::arg("q"), py::arg("eps"), py::arg("p"), py::arg("n"), py::arg("max_level") = 20000);

  m.def("adjgroup_suite", [] {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& c : adj::run_suite()) out.emplace_back(c.name, c.pass);
    return out;
  });

  m.def(
      "verify_paper_example",
      [](int n, bool witness) {
        ExampleOptions o;
        o.n = n;
        o.witness = witness;
        ExampleReport r;
        {
          py::gil_scoped_release release;
          r = run_verify_paper_example(o);
        }
        return to_py(to_json(r, false));
      },
      py::arg("n") = 2, py::arg("witness") = true);
}
