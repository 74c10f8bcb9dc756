// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Core>

#include "modspace/core/matrix_field.hpp"

namespace modspace {

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  Mat vectors;             // columns are eigenvectors
};

// Eigendecomposition of the Hermitian part (A + A^H) / 2.
HermitianEigen hermitian_eigen(const Mat& a);

// A^t by functional calculus. Throws ErrorKind::conditioning when the
// smallest eigenvalue is below floor.
Mat hermitian_power(const Mat& a, double t, double floor = 1e-14);

// Operator norm induced by the Euclidean norm on C^m.
double spectral_norm(const Mat& a);

double hermitian_defect(const Mat& a);

}  // namespace modspace
