#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "hsbm/matrix.hpp"

namespace hsbm {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full symmetric eigendecomposition. Eigenvalues are sorted descending with
// ties broken by original position (stable), eigenvectors are the matching
// orthonormal columns: vectors[i*n + j] is the i-th component of the j-th
// eigenvector.
struct EigenSystem {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  double vector_component(int i, int j) const { return vectors[static_cast<std::size_t>(i) * n + j]; }
};

// Householder tridiagonalization followed by implicit-shift QL with
// accumulated transforms. Fully deterministic: no pivot randomization, fixed
// sweep order, stable final sort.
EigenSystem eig_sym(const SymmetricMatrix& x);

// max_i |lambda_i|.
double spectral_norm(const SymmetricMatrix& x);

// Power-iteration estimate of the spectral norm from the fixed start vector
// 1/sqrt(n). Every iterate is a Rayleigh-type lower bound on ||X||_2; after
// convergence at rel_tol it is within that tolerance of the true norm for
// inputs with a dominant |eigenvalue| gap.
double spectral_norm_power_iteration(const SymmetricMatrix& x, double rel_tol = 1e-9,
                                     int max_iterations = 20000);

}  // namespace hsbm
