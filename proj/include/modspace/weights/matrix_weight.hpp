// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "modspace/core/matrix_field.hpp"

namespace modspace {

// Hermitian positive-definite matrix field with cached fractional powers.
// Copies share the power cache; the samples are immutable.
class MatrixWeight {
 public:
  static constexpr double kDefaultFloor = 1e-14;

  // Validates every sample (Hermitian to 1e-12, smallest eigenvalue above
  // floor). Throws ErrorKind::data naming the first offending gridpoint.
  explicit MatrixWeight(MatrixField samples, double floor = kDefaultFloor);

  static MatrixWeight identity(const GridSpec& grid);

  const MatrixField& samples() const { return samples_; }
  const GridSpec& grid() const { return samples_.grid(); }
  int m() const { return samples_.m(); }
  double floor() const { return floor_; }
  bool is_identity() const { return identity_; }

  // W^t at every gridpoint. Computed once per exponent; safe to call from
  // concurrent readers.
  std::shared_ptr<const MatrixField> power(double t) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<double, std::shared_ptr<const MatrixField>> powers;
  };

  MatrixField samples_;
  double floor_;
  bool identity_ = false;
  std::shared_ptr<Cache> cache_;
};

// W^t as a weight in its own right.
MatrixWeight hpd_power(const MatrixWeight& W, double t);

}  // namespace modspace
