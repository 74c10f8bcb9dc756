// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/reducing/reducing_operator.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <limits>
#include <cmath>

#include "modspace/core/io.hpp"
#include "modspace/core/quadrature.hpp"
#include "modspace/error.hpp"
#include "modspace/parallel.hpp"
#include "modspace/weights/characteristics.hpp"
#include "modspace/weights/hermitian.hpp"

namespace modspace {

const char* to_string(ReducingMethod m) { return m == ReducingMethod::moment ? "moment" : "mvee"; }

ReducingMethod reducing_method_from_string(const std::string& s, const std::string& path) {
  if (s == "moment") return ReducingMethod::moment;
  if (s == "mvee") return ReducingMethod::mvee;
  fail(ErrorKind::config, path + ": expected 'moment' or 'mvee', got '" + s + "'");
}

ReducingMethod default_reducing_method(double p) { return p == 2.0 ? ReducingMethod::moment : ReducingMethod::mvee; }

double cell_average_norm(const MatrixField& root, std::span<const std::size_t> cell, double p, const Vec& z) {
  const int m = root.m();
  double s = 0.0;
  for (auto x : cell) {
    double a2 = 0.0;
    for (int i = 0; i < m; ++i) {
      cplx v = 0.0;
      for (int j = 0; j < m; ++j) v += root.entry(i, j, x) * z(j);
      a2 += std::norm(v);
    }
    s += std::pow(a2, 0.5 * p);
  }
  return std::pow(s / static_cast<double>(cell.size()), 1.0 / p);
}

namespace {

// Real coordinates of a Hermitian m x m matrix: diagonal entries, then the
// real and imaginary parts of each upper off-diagonal entry.
std::vector<Mat> hermitian_basis(int m) {
  std::vector<Mat> basis;
  for (int j = 0; j < m; ++j) {
    Mat e = Mat::Zero(m, m);
    e(j, j) = 1.0;
    basis.push_back(e);
  }
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      Mat re = Mat::Zero(m, m), im = Mat::Zero(m, m);
      re(j, k) = re(k, j) = 1.0;
      im(j, k) = cplx(0.0, 1.0);
      im(k, j) = cplx(0.0, -1.0);
      basis.push_back(re);
      basis.push_back(im);
    }
  return basis;
}

}  // namespace

Mat mvee_shape(std::span<const Vec> pts, double tolerance, int max_iterations) {
  // Minimise -log det M subject to z^* M z <= 1 for every point with a
  // log-barrier path-following Newton method in the m^2 real coordinates of
  // M. The barrier duality gap count / t bounds the log-volume excess.
  const std::size_t count = pts.size();
  if (count == 0) fail(ErrorKind::numerical, "mvee: no points");
  const int m = static_cast<int>(pts[0].size());
  const auto basis = hermitian_basis(m);
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd a(count, dim);
  double radius2 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (int b = 0; b < dim; ++b) a(i, b) = (pts[i].adjoint() * basis[b] * pts[i])(0, 0).real();
    radius2 = std::max(radius2, pts[i].squaredNorm());
  }
  if (!(radius2 > 0.0) || !std::isfinite(radius2)) fail(ErrorKind::numerical, "mvee: degenerate point set");
  auto to_matrix = [&](const Eigen::VectorXd& th) {
    Mat M = Mat::Zero(m, m);
    for (int b = 0; b < dim; ++b) M += th(b) * basis[b];
    return M;
  };
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
  for (int j = 0; j < m; ++j) theta(j) = 0.5 / radius2;

  // f_t(theta) = -t log det M - sum log(1 - a_i . theta); +inf when infeasible.
  auto value = [&](const Eigen::VectorXd& th, double t) {
    const Eigen::VectorXd q = a * th;
    if (q.maxCoeff() >= 1.0) return std::numeric_limits<double>::infinity();
    Eigen::LLT<Mat> llt(to_matrix(th));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (int j = 0; j < m; ++j) logdet += 2.0 * std::log(llt.matrixL()(j, j).real());
    if (!std::isfinite(logdet)) return std::numeric_limits<double>::infinity();
    return -t * logdet - (1.0 - q.array()).log().sum();
  };

  int steps = 0;
  double t = 1.0;
  for (;;) {
    for (;;) {  // centring
      if (++steps > max_iterations)
        fail(ErrorKind::numerical, "mvee: Newton iteration did not converge in " + std::to_string(max_iterations) +
                                       " steps");
      const Mat Minv = to_matrix(theta).inverse();
      const Eigen::VectorXd slack = (1.0 - (a * theta).array()).matrix();
      Eigen::VectorXd grad(dim);
      Eigen::MatrixXd hess(dim, dim);
      std::vector<Mat> mb(dim);
      for (int b = 0; b < dim; ++b) mb[b] = Minv * basis[b];
      for (int b = 0; b < dim; ++b) {
        grad(b) = -t * mb[b].trace().real();
        for (int c = b; c < dim; ++c) hess(b, c) = hess(c, b) = t * (mb[b] * mb[c]).trace().real();
      }
      const Eigen::ArrayXd inv = slack.array().inverse();
      grad += a.transpose() * inv.matrix();
      hess += a.transpose() * (inv * inv).matrix().asDiagonal() * a;
      const Eigen::VectorXd step = hess.ldlt().solve(-grad);
      const double decrement2 = -grad.dot(step);
      if (!std::isfinite(decrement2)) fail(ErrorKind::numerical, "mvee: singular Newton system");
      if (decrement2 <= 1e-9) break;
      // Inside the quadratic region the full step is feasible and the Armijo
      // test would only compare roundoff of a value of size t.
      const bool quadratic = decrement2 < 0.25;
      const double f0 = value(theta, t);
      double s = 1.0;
      for (;;) {
        const double f1 = value(theta + s * step, t);
        if (quadratic ? std::isfinite(f1) : f1 <= f0 - 0.25 * s * decrement2) break;
        s *= 0.5;
        if (s < 1e-16) fail(ErrorKind::numerical, "mvee: line search stalled");
      }
      const Eigen::VectorXd next = theta + s * step;
      if (next == theta) break;  // centred to working precision
      theta = next;
    }
    if (static_cast<double>(count) / t <= tolerance) break;
    t *= 8.0;
  }
  // Return the shape in the normalisation {z : z^* X^{-1} z <= m}.
  return (static_cast<double>(m) * to_matrix(theta)).inverse();
}

Mat reducing_operator(const MatrixWeight& W, double p, std::span<const std::size_t> cell, ReducingMethod method,
                      const MveeOptions& opts) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::parameter, "reducing operators need p in [1, inf)");
  if (cell.empty()) fail(ErrorKind::numerical, "reducing operator: empty cell");
  const int m = W.m();
  if (method == ReducingMethod::moment) {
    const auto pw = W.power(2.0 / p);
    Mat avg = Mat::Zero(m, m);
    for (auto x : cell) avg += pw->at(x);
    avg /= static_cast<double>(cell.size());
    return hermitian_power(avg, 0.5, 0.0);
  }
  if (opts.directions < 64) fail(ErrorKind::parameter, "mvee needs at least 64 sampled directions");
  const auto root = W.power(1.0 / p);
  std::vector<Vec> dirs = random_unit_vectors(m, opts.directions - m, opts.seed);
  for (int i = 0; i < m; ++i) dirs.push_back(Vec::Unit(m, i));
  std::vector<Vec> pts;
  pts.reserve(dirs.size());
  for (const Vec& z : dirs) {
    const double rho = cell_average_norm(*root, cell, p, z);
    if (!(rho > 0.0) || !std::isfinite(rho))
      fail(ErrorKind::numerical, "degeneracy error: rho_Q vanishes in a sampled direction");
    pts.push_back(z / rho);
  }
  const Mat X = mvee_shape(pts, opts.tolerance, opts.max_iterations);
  // |A z|^2 = z^* (m X)^{-1} z, so the ellipsoid is the unit ball of |A .|.
  return hermitian_power(X, -0.5, 0.0) / std::sqrt(static_cast<double>(m));
}

ReducingOperatorSet ReducingOperatorSet::build(const MatrixWeight& W, double p, const CellPartition& partition,
                                               ReducingMethod method, const MveeOptions& opts) {
  if (!W.grid().same_lattice(partition.grid()) || W.m() != partition.grid().m)
    fail(ErrorKind::contract, "weight and partition live on different grids");
  std::vector<Mat> ops(partition.size());
  W.power(method == ReducingMethod::moment ? 2.0 / p : 1.0 / p);  // fill the cache before fanning out
  parallel_for(partition.size(), [&](std::size_t c) {
    ops[c] = reducing_operator(W, p, partition.members(c), method, opts);
  });
  ReducingOperatorSet s;
  s.partition_ = std::make_shared<const CellPartition>(partition);
  s.method_ = method;
  s.p_ = p;
  return s.with_ops(std::move(ops));
}

ReducingOperatorSet ReducingOperatorSet::identity(const CellPartition& partition, double p) {
  ReducingOperatorSet s;
  s.partition_ = std::make_shared<const CellPartition>(partition);
  s.p_ = p;
  const int m = partition.grid().m;
  return s.with_ops(std::vector<Mat>(partition.size(), Mat::Identity(m, m)));
}

ReducingOperatorSet ReducingOperatorSet::with_ops(std::vector<Mat> ops) const {
  ReducingOperatorSet s;
  s.partition_ = partition_;
  s.method_ = method_;
  s.p_ = p_;
  s.ops_ = std::move(ops);
  auto field = std::make_shared<MatrixField>(partition_->grid());
  for (std::size_t x = 0; x < field->count(); ++x) field->set(x, s.ops_[partition_->cell_of(x)]);
  s.field_ = std::move(field);
  return s;
}

ReducingOperatorSet ReducingOperatorSet::inverse_transpose() const {
  std::vector<Mat> ops;
  ops.reserve(ops_.size());
  for (const Mat& a : ops_) ops.push_back(a.inverse().transpose());
  return with_ops(std::move(ops));
}

ReducingOperatorSet ReducingOperatorSet::inverse() const {
  std::vector<Mat> ops;
  ops.reserve(ops_.size());
  for (const Mat& a : ops_) ops.push_back(a.inverse());
  return with_ops(std::move(ops));
}

ReducingOperatorSet ReducingOperatorSet::scaled(double c) const {
  std::vector<Mat> ops;
  ops.reserve(ops_.size());
  for (const Mat& a : ops_) ops.push_back(c * a);
  return with_ops(std::move(ops));
}

double averaged_lp_norm(const VectorField& f, const ReducingOperatorSet& ops, double p) {
  if (!f.grid().same_lattice(ops.partition().grid()) || f.m() != ops.partition().grid().m)
    fail(ErrorKind::contract, "partition mismatch: operators built for a different grid");
  return transformed_lp_norm(f, ops.field(), p);
}

void write_reducing_set(const std::string& path, const ReducingOperatorSet& ops) {
  const auto& part = ops.partition();
  const int m = part.grid().m;
  std::vector<cplx> payload;
  json anchors = json::array();
  for (std::size_t c = 0; c < ops.size(); ++c) {
    const Point a = part.anchor(c);
    anchors.push_back(part.grid().n == 1 ? json::array({a[0]}) : json::array({a[0], a[1]}));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) payload.push_back(ops.op(c)(i, j));
  }
  json h = grid_to_json(part.grid());
  h["kind"] = "reducing-operator-set";
  h["k"] = part.grid().n == 1 ? json::array({part.k()[0]}) : json::array({part.k()[0], part.k()[1]});
  h["a"] = part.a();
  h["r_convention"] = to_string(part.convention());
  h["side"] = part.side();
  h["method"] = to_string(ops.method());
  h["p"] = ops.p();
  h["anchors"] = anchors;
  h["layout"] = "cell-major row-major";
  write_blob(path, h, payload);
}

}  // namespace modspace
