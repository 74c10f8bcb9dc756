// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/weights/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "modspace/error.hpp"

namespace modspace {

HermitianEigen hermitian_eigen(const Mat& a) {
  const Mat h = 0.5 * (a + a.adjoint());
  if (h.rows() == 1) {
    HermitianEigen e;
    e.values = Eigen::VectorXd::Constant(1, h(0, 0).real());
    e.vectors = Mat::Identity(1, 1);
    return e;
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat hermitian_power(const Mat& a, double t, double floor) {
  if (!std::isfinite(t)) fail(ErrorKind::parameter, "hermitian_power: exponent must be finite");
  if (a.rows() == 1) {
    const double w = a(0, 0).real();
    if (!(w >= floor)) {
      std::ostringstream os;
      os << "eigenvalue " << w << " below floor " << floor;
      fail(ErrorKind::conditioning, os.str());
    }
    Mat r(1, 1);
    r(0, 0) = std::pow(w, t);
    return r;
  }
  const HermitianEigen e = hermitian_eigen(a);
  if (!(e.values(0) >= floor)) {
    std::ostringstream os;
    os << "eigenvalue " << e.values(0) << " below floor " << floor;
    fail(ErrorKind::conditioning, os.str());
  }
  Eigen::VectorXd powered = e.values.unaryExpr([t](double v) { return std::pow(v, t); });
  return e.vectors * powered.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

double spectral_norm(const Mat& a) {
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  const Mat g = a.adjoint() * a;
  if (g.rows() == 2) {
    // Largest eigenvalue of a 2x2 Hermitian matrix in closed form.
    const double p = g(0, 0).real(), q = g(1, 1).real();
    const double off = std::norm(g(0, 1));
    const double half_gap = 0.5 * (p - q);
    return std::sqrt(std::max(0.0, 0.5 * (p + q) + std::sqrt(half_gap * half_gap + off)));
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double hermitian_defect(const Mat& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace modspace
