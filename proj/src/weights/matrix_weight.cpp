// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/weights/matrix_weight.hpp"

#include <sstream>

#include "modspace/error.hpp"
#include "modspace/weights/hermitian.hpp"

namespace modspace {
namespace {

std::string where(const GridSpec& g, std::size_t x) {
  std::ostringstream os;
  const auto idx = g.unflatten(x);
  os << "gridpoint " << x << " (index " << idx[0];
  if (g.n == 2) os << ", " << idx[1];
  const Point c = g.coordinate(x);
  os << "; x = " << c[0];
  if (g.n == 2) os << ", " << c[1];
  os << ")";
  return os.str();
}

bool exact_identity(const MatrixField& f) {
  for (int i = 0; i < f.m(); ++i)
    for (int j = 0; j < f.m(); ++j) {
      const cplx want = i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      for (std::size_t x = 0; x < f.count(); ++x)
        if (f.entry(i, j, x) != want) return false;
    }
  return true;
}

}  // namespace

MatrixWeight::MatrixWeight(MatrixField samples, double floor)
    : samples_(std::move(samples)), floor_(floor), cache_(std::make_shared<Cache>()) {
  if (!(floor > 0.0)) fail(ErrorKind::parameter, "eigenvalue floor must be positive");
  const GridSpec& g = samples_.grid();
  for (std::size_t x = 0; x < samples_.count(); ++x) {
    const Mat a = samples_.at(x);
    if (!a.allFinite()) fail(ErrorKind::data, "construction error: non-finite weight at " + where(g, x));
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermitian_defect(a) > 1e-12 * scale)
      fail(ErrorKind::data, "construction error: weight not Hermitian at " + where(g, x));
    const double lo = hermitian_eigen(a).values(0);
    if (!(lo > floor_)) {
      std::ostringstream os;
      os << "construction error: weight not positive definite at " << where(g, x)
         << " (smallest eigenvalue " << lo << ")";
      fail(ErrorKind::data, os.str());
    }
  }
  identity_ = exact_identity(samples_);
}

MatrixWeight MatrixWeight::identity(const GridSpec& grid) {
  return MatrixWeight(MatrixField::identity(grid));
}

std::shared_ptr<const MatrixField> MatrixWeight::power(double t) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->powers.find(t);
  if (it != cache_->powers.end()) return it->second;
  std::shared_ptr<const MatrixField> result;
  if (identity_ || t == 0.0) {
    result = std::make_shared<const MatrixField>(MatrixField::identity(grid()));
  } else if (t == 1.0) {
    result = std::make_shared<const MatrixField>(samples_);
  } else {
    auto out = std::make_shared<MatrixField>(grid());
    for (std::size_t x = 0; x < samples_.count(); ++x) {
      try {
        out->set(x, hermitian_power(samples_.at(x), t, floor_));
      } catch (const Error& e) {
        fail(e.kind(), std::string(e.what()) + " at " + where(grid(), x));
      }
    }
    result = std::move(out);
  }
  cache_->powers.emplace(t, result);
  return result;
}

MatrixWeight hpd_power(const MatrixWeight& W, double t) {
  return MatrixWeight(*W.power(t), W.floor());
}

}  // namespace modspace
