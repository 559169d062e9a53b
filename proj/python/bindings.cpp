#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualbern/approx.hpp"
#include "dualbern/basis.hpp"
#include "dualbern/dual_core.hpp"

namespace py = pybind11;
using namespace dualbern;

namespace {

BezierCurve as_curve(const Eigen::MatrixXd& points) { return BezierCurve(points); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constrained dual Bernstein polynomials and their use in curve approximation";

  m.def(
      "dual_table",
      [](int n, int k, int l, double alpha, double beta, bool use_symmetry) {
        return ctable_build(ConstraintSpec(n, k, l), JacobiParams(alpha, beta), use_symmetry).values();
      },
      py::arg("n"), py::arg("k") = 0, py::arg("l") = 0, py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
      py::arg("use_symmetry") = false,
      "C-table of the constrained dual basis; row/column r stands for index k + r.");

  m.def(
      "cij",
      [](int n, int i, int j, double alpha, double beta, const std::string& method) {
        const JacobiParams p(alpha, beta);
        if (method == "direct") return cij_direct(n, i, j, p);
        if (method == "shifted") return cij_shifted(n, i, j, p);
        if (method == "ra") return cij_ra_oracle(n, i, j, p);
        throw std::invalid_argument("method must be 'direct', 'shifted' or 'ra'");
      },
      py::arg("n"), py::arg("i"), py::arg("j"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
      py::arg("method") = "direct", "Unconstrained coefficient c_ij(n) from a closed form.");

  m.def(
      "dual_eval",
      [](int n, int i, double x, int k, int l, double alpha, double beta) {
        return constrained_dual_eval(ConstraintSpec(n, k, l), i, JacobiParams(alpha, beta), x);
      },
      py::arg("n"), py::arg("i"), py::arg("x"), py::arg("k") = 0, py::arg("l") = 0, py::arg("alpha") = 0.0,
      py::arg("beta") = 0.0);

  m.def(
      "evaluate",
      [](const Eigen::MatrixXd& points, double x) { return de_casteljau_eval(as_curve(points), x); },
      py::arg("points"), py::arg("x"), "Bezier curve value by de Casteljau; points is (n+1) x d.");

  m.def(
      "degree_elevate",
      [](const Eigen::MatrixXd& points, int r) { return degree_elevate(as_curve(points), r).points(); },
      py::arg("points"), py::arg("r") = 1);

  m.def(
      "degree_reduce",
      [](const Eigen::MatrixXd& points, int target, int k, int l, double alpha, double beta) {
        return degree_reduce(as_curve(points), target, k, l, JacobiParams(alpha, beta)).points();
      },
      py::arg("points"), py::arg("m"), py::arg("k") = 0, py::arg("l") = 0, py::arg("alpha") = 0.0,
      py::arg("beta") = 0.0, "Constrained least-squares degree reduction.");

  m.def(
      "squared_l2_distance",
      [](const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, double alpha, double beta) {
        return squared_l2_distance(as_curve(f), as_curve(g), JacobiParams(alpha, beta));
      },
      py::arg("f"), py::arg("g"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0);

  m.def(
      "roots",
      [](const std::vector<double>& coeffs, double tol, int max_iter) {
        std::vector<std::tuple<double, double, bool>> out;
        for (const RootEnclosure& e : clip_roots(BezierCurve::scalar(coeffs), tol, max_iter)) {
          out.emplace_back(e.lo, e.hi, e.converged);
        }
        return out;
      },
      py::arg("coeffs"), py::arg("tol") = 1e-10, py::arg("max_iter") = 64,
      "Root enclosures (lo, hi, converged) in [0, 1] of a scalar Bernstein polynomial.");

  m.def(
      "rational_approx",
      [](const Eigen::MatrixXd& points, const Eigen::VectorXd& weights, int target, int k, int l, double alpha,
         double beta, int nodes) {
        return rational_approx(RationalBezier(points, weights), target, k, l, JacobiParams(alpha, beta), nodes)
            .points();
      },
      py::arg("points"), py::arg("weights"), py::arg("m"), py::arg("k") = 0, py::arg("l") = 0,
      py::arg("alpha") = 0.0, py::arg("beta") = 0.0, py::arg("nodes") = 0);

  m.def(
      "bernstein_to_jacobi",
      [](const std::vector<double>& coeffs, double alpha, double beta) {
        return bernstein_to_jacobi(BezierCurve::scalar(coeffs), JacobiParams(alpha, beta)).coeffs;
      },
      py::arg("coeffs"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0);

  m.def(
      "jacobi_to_bernstein",
      [](const std::vector<double>& coeffs, double alpha, double beta, int n) {
        const JacobiExpansion exp{JacobiParams(alpha, beta), coeffs};
        return jacobi_to_bernstein(exp, n < 0 ? exp.degree() : n).coordinate(0);
      },
      py::arg("coeffs"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0, py::arg("n") = -1);
}
