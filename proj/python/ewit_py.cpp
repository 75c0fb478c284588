#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ewit/choi.hpp"
#include "ewit/linalg.hpp"
#include "ewit/scan.hpp"
#include "ewit/witness.hpp"

namespace py = pybind11;
using namespace ewit;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

template <class T>
py::array_t<T> to_numpy(const Matrix<T>& m) {
  py::array_t<T> out({m.rows(), m.cols()});
  auto span = m.data();
  std::copy(span.begin(), span.end(), out.mutable_data());
  return out;
}

template <class T, class A>
Matrix<T> from_numpy(const A& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  Matrix<T> m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

DensityMatrix density(const CArray& rho, std::size_t dim_a, std::size_t dim_b) {
  return require_density(from_numpy<cplx>(rho), dim_a, dim_b);
}

std::size_t side(const CArray& rho) {
  const auto n = static_cast<std::size_t>(rho.shape(0));
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw DimensionError("cannot infer equal factor dimensions; pass dim_a and dim_b");
  return d;
}

py::dict report_dict(const DetectionReport& r) {
  py::dict out;
  out["nuclear_norm"] = r.nuclear_norm;
  out["detection_value"] = r.value;
  out["detected"] = r.detected;
  out["status"] = std::string(to_string(r.status));
  out["A"] = to_numpy(r.a);
  out["Z"] = to_numpy(r.z);
  return out;
}

std::pair<std::size_t, std::size_t> dims(const CArray& rho, std::size_t dim_a, std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0) {
    const std::size_t d = side(rho);
    return {d, d};
  }
  return {dim_a, dim_b};
}

}  // namespace

PYBIND11_MODULE(_ewit, m) {
  m.doc() = "Entanglement witnesses from the closed-form nuclear-norm solution";

  auto base = py::register_exception<Error>(m, "EwitError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NotPsdError>(m, "NotPsdError", base.ptr());
  py::register_exception<SymmetryError>(m, "SymmetryError", base.ptr());
  py::register_exception<ImaginaryResidueError>(m, "ImaginaryResidueError", base.ptr());
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  // states
  m.def("horodecki_alpha", [](double alpha) { return to_numpy(horodecki_alpha(alpha).matrix); }, py::arg("alpha"));
  m.def("upb_tiles", [] { return to_numpy(upb_tiles().matrix); });
  m.def("horodecki_a", [](double a) { return to_numpy(horodecki_a(a).matrix); }, py::arg("a"));
  m.def(
      "choi_state",
      [](std::size_t d, double p, std::vector<double> mu) { return to_numpy(choi_state({d, p, std::move(mu)}).matrix); },
      py::arg("d"), py::arg("p"), py::arg("mu"));
  m.def(
      "random_product_state",
      [](std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
        return to_numpy(random_product_state(dim_a, dim_b, seed).state.matrix);
      },
      py::arg("dim_a"), py::arg("dim_b"), py::arg("seed"));
  m.def(
      "validate_density",
      [](const CArray& rho, std::size_t dim_a, std::size_t dim_b) {
        const auto [da, db] = dims(rho, dim_a, dim_b);
        py::list out;
        for (const auto& v : validate_density(from_numpy<cplx>(rho), da, db).violations)
          out.append(py::make_tuple(v.invariant, v.magnitude, v.message));
        return out;
      },
      py::arg("rho"), py::arg("dim_a") = 0, py::arg("dim_b") = 0,
      "List of (invariant, magnitude, message); empty for a valid state.");

  // linalg
  m.def(
      "partial_transpose",
      [](const CArray& rho, std::size_t dim_a, std::size_t dim_b) {
        return to_numpy(partial_transpose(from_numpy<cplx>(rho), dim_a, dim_b, Subsystem::A));
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
  m.def(
      "singular_values", [](const RArray& a) { return singular_values(from_numpy<double>(a)); }, py::arg("a"));

  // witness
  m.def(
      "correlation_matrix",
      [](const CArray& rho, std::size_t dim_a, std::size_t dim_b, const std::string& basis) {
        const auto [da, db] = dims(rho, dim_a, dim_b);
        const auto kind = parse_basis_kind(basis);
        return to_numpy(correlation_matrix(density(rho, da, db), make_basis(kind, da), make_basis(kind, db)).entries);
      },
      py::arg("rho"), py::arg("dim_a") = 0, py::arg("dim_b") = 0, py::arg("basis") = "unit");
  m.def(
      "detection_value",
      [](const CArray& rho, std::size_t dim_a, std::size_t dim_b, const std::string& basis) {
        const auto [da, db] = dims(rho, dim_a, dim_b);
        const auto kind = parse_basis_kind(basis);
        return report_dict(detection_value(density(rho, da, db), make_basis(kind, da), make_basis(kind, db)));
      },
      py::arg("rho"), py::arg("dim_a") = 0, py::arg("dim_b") = 0, py::arg("basis") = "unit",
      "Report dict with nuclear_norm, detection_value, detected, status, A and Z.");
  m.def(
      "witness_coefficients",
      [](const RArray& rho_tilde) {
        const auto c = witness_coefficients(from_numpy<double>(rho_tilde));
        return py::make_tuple(to_numpy(c.a), to_numpy(c.z));
      },
      py::arg("rho_tilde"), "(A, Z) for a correlation matrix.");
  m.def(
      "witness_matrix",
      [](const RArray& a, std::size_t dim_a, std::size_t dim_b, const std::string& basis) {
        const auto kind = parse_basis_kind(basis);
        return to_numpy(assemble_witness(from_numpy<double>(a), make_basis(kind, dim_a), make_basis(kind, dim_b)).matrix);
      },
      py::arg("a"), py::arg("dim_a"), py::arg("dim_b"), py::arg("basis") = "unit");
  m.def(
      "seesaw_min",
      [](const CArray& w, std::size_t dim_a, std::size_t dim_b, std::size_t restarts, std::size_t iterations,
         std::uint64_t seed) {
        SeesawOptions opts;
        opts.restarts = restarts;
        opts.iterations = iterations;
        opts.seed = seed;
        const CMatrix mat = from_numpy<cplx>(w);
        py::gil_scoped_release release;
        return seesaw_min_separable(mat, dim_a, dim_b, opts).min_value;
      },
      py::arg("w"), py::arg("dim_a"), py::arg("dim_b"), py::arg("restarts") = 50, py::arg("iterations") = 200,
      py::arg("seed") = 0, "Smallest <ab|W|ab> found over product vectors.");

  // choi
  m.def(
      "detection_closed_form",
      [](std::size_t d, double p, std::vector<double> mu) { return detection_closed_form({d, p, std::move(mu)}); },
      py::arg("d"), py::arg("p"), py::arg("mu"));
  m.def(
      "ppt_bound", [](const std::vector<double>& mu, std::size_t d) { return ppt_bound(mu, d); }, py::arg("mu"),
      py::arg("d"));

  // scan
  m.def(
      "scan_choi",
      [](std::size_t d, std::size_t mu_steps, std::size_t p_steps, bool closed_form, unsigned workers) {
        ChoiScanOptions opts{d, mu_steps, p_steps, closed_form, workers};
        ScanResult r;
        {
          py::gil_scoped_release release;
          r = scan_choi(opts);
        }
        return to_csv(r);
      },
      py::arg("d"), py::arg("mu_steps") = 200, py::arg("p_steps") = 100, py::arg("closed_form") = true,
      py::arg("workers") = 0, "Region scan as CSV text.");
}
