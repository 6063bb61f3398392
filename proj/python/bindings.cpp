#include "mvxop/cli.hpp"
#include "mvxop/exceptional.hpp"
#include "mvxop/fourier.hpp"
#include "mvxop/zeros.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace mvxop;

namespace {

std::vector<Rat> rats(const std::optional<std::vector<std::string>>& v) {
  std::vector<Rat> r;
  if (v)
    for (const auto& s : *v) r.push_back(parse_rat(s));
  return r;
}

std::vector<std::string> poly_strings(const Poly& p) {
  std::vector<std::string> r;
  for (const auto& c : p.coeffs()) r.push_back(format_rat(c));
  return r;
}

std::vector<std::vector<std::vector<std::string>>> matpoly_strings(const MatPoly& m) {
  std::vector<std::vector<std::vector<std::string>>> r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r[i].push_back(poly_strings(m(i, j)));
  return r;
}

std::vector<std::vector<std::string>> mat_strings(const Mat& m) {
  std::vector<std::vector<std::string>> r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i].push_back(format_rat(m(i, j)));
  return r;
}

py::dict check_dict(const Check& c) {
  py::dict d;
  d["ok"] = c.ok;
  d["residual"] = c.residual;
  d["detail"] = c.detail;
  return d;
}

Model build_model(std::size_t N, unsigned m, const std::string& alpha, const std::string& nu, unsigned nmax,
                  const std::optional<std::vector<std::string>>& mu, const std::optional<std::vector<std::string>>& delta,
                  bool allow_small_nu, bool with_T1) {
  Params p;
  p.N = N;
  p.m = m;
  p.alpha = parse_rat(alpha);
  p.nu = parse_rat(nu);
  p.mu = rats(mu);
  p.delta = rats(delta);
  p.allow_small_nu = allow_small_nu;
  return Model::build(p, nmax, with_T1);
}

py::dict zeros_dict(const Model& md, unsigned n, unsigned precision_bits) {
  ZeroOptions o;
  o.precision_bits = precision_bits;
  const ZeroReport r = analyze_zeros(md, n, o);
  py::list roots;
  for (const auto& z : r.roots) {
    py::dict e;
    e["z"] = z.z;
    e["multiplicity"] = z.multiplicity;
    e["real"] = z.real;
    e["cluster_id"] = z.cluster_id < 0 ? py::object(py::none()) : py::object(py::int_(z.cluster_id));
    e["coincides_upsilon"] = z.coincides_upsilon;
    roots.append(e);
  }
  py::dict d;
  d["degree"] = r.degree;
  d["n_real"] = r.n_real;
  d["n_positive"] = r.n_positive;
  d["n_complex_distinct"] = r.n_complex_distinct;
  d["n_clusters"] = r.n_clusters;
  d["cluster_sizes"] = r.cluster_sizes;
  d["remainder_zero"] = r.remainder_zero;
  d["multiplicities_certified"] = r.multiplicities_certified;
  d["real_simple"] = to_string(r.real_simple);
  d["clusters"] = to_string(r.clusters);
  d["coincide"] = to_string(r.coincide);
  d["roots"] = roots;
  d["csv"] = zeros_csv(r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Matrix-valued exceptional Laguerre polynomials";

  mod.def("format_rat", [](const std::string& s) { return format_rat(parse_rat(s)); },
          "Canonical p/q form of an exact rational string.");

  mod.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"mvxop"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : all) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");

  mod.def("cdh_check",
          [](const std::string& alpha, unsigned m, unsigned K) {
            const CdhResult r = cdh_check(parse_rat(alpha), m, K);
            py::dict d;
            d["ok"] = r.ok;
            d["max_n"] = r.max_n;
            d["shifted_plus_form"] = r.shifted_plus_form;
            d["detail"] = r.detail;
            return d;
          },
          py::arg("alpha"), py::arg("m"), py::arg("K"));

  py::class_<Model>(mod, "Model")
      .def(py::init(&build_model), py::arg("N") = 1, py::arg("m") = 0, py::arg("alpha") = "7/2",
           py::arg("nu") = "5/2", py::arg("nmax") = 5, py::arg("mu") = py::none(), py::arg("delta") = py::none(),
           py::arg("allow_small_nu") = false, py::arg("with_T1") = true)
      .def_property_readonly("N", [](const Model& md) { return md.p.N; })
      .def_property_readonly("m", [](const Model& md) { return md.p.m; })
      .def_property_readonly("nmax", &Model::nmax)
      .def_property_readonly("lam", [](const Model& md) { return format_rat(md.p.lambda()); })
      .def_property_readonly("detF", [](const Model& md) { return poly_strings(md.seed.detF); })
      .def("P", [](const Model& md, unsigned n) { return matpoly_strings(md.family.at(n).P); }, py::arg("n"))
      .def("H", [](const Model& md, unsigned n) { return mat_strings(md.family.at(n).H); }, py::arg("n"))
      .def("Gamma", [](const Model& md, unsigned n) { return mat_strings(md.family.at(n).Gamma); }, py::arg("n"))
      .def("Phat", [](const Model& md, unsigned n) { return matpoly_strings(md.xfamily.at(n).Phat); }, py::arg("n"))
      .def("Hhat", [](const Model& md, unsigned n) { return mat_strings(md.xfamily.at(n).Hhat); }, py::arg("n"))
      .def("det_xpoly", [](const Model& md, unsigned n) { return poly_strings(det_xpoly(md, n)); }, py::arg("n"))
      .def("verify_factorization", [](const Model& md) { return check_dict(verify_factorization(md)); })
      .def("verify_symmetry", [](const Model& md) { return check_dict(verify_symmetry(md)); })
      .def("verify_pearson", [](const Model& md) { return check_dict(verify_pearson(md)); })
      .def("verify_lowering", [](const Model& md, unsigned n) { return check_dict(verify_lowering(md, n)); }, py::arg("n"))
      .def("verify_eigen_T1", [](const Model& md, unsigned n) { return check_dict(verify_eigen_T1(md, n)); }, py::arg("n"))
      .def("verify_xdegree", [](const Model& md, unsigned n) { return check_dict(verify_xdegree(md, n)); }, py::arg("n"))
      .def("verify_xnorm", [](const Model& md, unsigned n) { return check_dict(verify_xnorm(md, n)); }, py::arg("n"))
      .def("verify_diagram", [](const Model& md, unsigned n) { return check_dict(verify_diagram(md, n)); }, py::arg("n"))
      .def("verify_orthogonality",
           [](const Model& md, unsigned nmax, double tol) { return check_dict(verify_orthogonality(md, nmax, tol)); },
           py::arg("nmax"), py::arg("tol") = 1e-8)
      .def("zeros", &zeros_dict, py::arg("n"), py::arg("precision_bits") = 256);
}
