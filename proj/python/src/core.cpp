#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expcert/certifier.hpp"
#include "expcert/search.hpp"
#include "expcert/serialize.hpp"

namespace py = pybind11;
using namespace expcert;

namespace {

BigInt big(const std::string& s) {
  BigInt v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + s);
  return v;
}

EngineOptions options(unsigned long start_bits, unsigned long cap_bits, bool shortcuts) {
  EngineOptions opt;
  opt.schedule = {start_bits, cap_bits};
  opt.use_shortcuts = shortcuts;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified checks for a^x + b^y = c^z; integers cross the boundary as decimal strings";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<InvalidInstance>(m, "InvalidInstance", PyExc_ValueError);

  m.def("instance_json", [](const std::string& mm, const std::string& n, unsigned long r) {
    return instance_json(build_instance(big(mm), big(n), r));
  });
  m.def(
      "certify_json",
      [](const std::string& mm, const std::string& n, unsigned long r, unsigned long start_bits,
         unsigned long cap_bits, bool shortcuts) {
        py::gil_scoped_release release;
        return certificate_json(certify(build_instance(big(mm), big(n), r), options(start_bits, cap_bits, shortcuts)));
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("start_bits") = 128, py::arg("cap_bits") = 65536,
      py::arg("shortcuts") = true);
  m.def("certify_symbolic_json", [](const std::string& log10_m, const std::string& n, unsigned long r) {
    return certificate_json(certify_symbolic(log10_m, big(n), r));
  });
  m.def(
      "search_json",
      [](const std::string& mm, const std::string& n, unsigned long r, unsigned long x_max, unsigned long y_max,
         unsigned long z_max, bool sieve, unsigned jobs) {
        py::gil_scoped_release release;
        SieveConfig cfg;
        cfg.enabled = sieve;
        cfg.jobs = jobs;
        return search_report_json(exhaustive_search(build_instance(big(mm), big(n), r), {x_max, y_max, z_max}, cfg));
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("x_max") = 30, py::arg("y_max") = 30, py::arg("z_max") = 30,
      py::arg("sieve") = true, py::arg("jobs") = 1);
  m.def("cfcheck_json", [](const std::string& mm, const std::string& n) {
    const Instance inst = build_instance(big(mm), big(n), 2);
    return elimination_json(inst, eliminate_y1(inst));
  });
  m.def("verify_solution", [](const std::string& mm, const std::string& n, unsigned long r, unsigned long x,
                              unsigned long y, unsigned long z) {
    return verify_solution(build_instance(big(mm), big(n), r), x, y, z);
  });
  m.def("jacobi", [](const std::string& a, const std::string& n) { return jacobi(big(a), big(n)); });
  m.def("ord_p", [](const std::string& n, const std::string& p) { return ord_p(big(n), big(p)); });
  m.def("lte_valuation", [](const std::string& u, const std::string& v, const std::string& p, const std::string& k) {
    return lte_valuation(big(u), big(v), big(p), big(k));
  });
  m.def("partial_quotients", [](const std::string& a, const std::string& c, const std::string& q_limit) {
    const ContinuedFraction cf = cf_expand(big(a), big(c), big(q_limit));
    std::vector<std::string> out;
    for (std::size_t k = 0; k < cf.size(); ++k) {
      if (cf.certified[k]) out.push_back(to_string(cf.partial_quotients[k]));
    }
    return out;
  });
}
