// Copyright 2026 The jsdm-hybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JSDM_NUMERICS_HPP
#define JSDM_NUMERICS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace jsdm {

using cdouble = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. Every failure raised by the library derives from jsdm::Error
// so callers can catch one type; the subclasses carry the failure category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DefinitenessError : public Error {
 public:
  DefinitenessError(const std::string& what, double offending_eigenvalue)
      : Error(what), eigenvalue_(offending_eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class PsdError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const cmat& a, std::string_view what);

/// Eigen-decomposition with values sorted non-increasing and unit-norm
/// eigenvectors stored column-wise.
struct EigDecomposition {
  rvec values;
  cmat vectors;
};

struct SvdResult {
  cmat u;
  rvec singular_values;  // non-negative, non-increasing
  cmat v;
};

struct QrResult {
  cmat q;  // m x n, orthonormal columns
  cmat r;  // n x n, upper triangular with real positive diagonal
};

// Standard Hermitian eigenproblem. The input is symmetrized as (A + A^H)/2
// before the decomposition.
EigDecomposition hermitian_eig(const cmat& a);

// Solves A v = lambda B v for Hermitian A and Hermitian positive-definite B by
// Cholesky reduction B = L L^H to the standard problem L^-1 A L^-H w = lambda w.
// Eigenvectors are returned with unit Euclidean norm.
EigDecomposition generalized_hermitian_eig(const cmat& a, const cmat& b);

// Thin SVD: A = U diag(s) V^H with U m x k, V n x k, k = min(m, n).
SvdResult svd(const cmat& a);

// Thin QR for m >= n with full column rank. The diagonal of R is made real and
// positive, which makes the factorization unique.
QrResult qr(const cmat& a);

// Hermitian PSD square root V diag(sqrt(lambda)) V^H. Eigenvalues down to
// -1e-6 ||R|| are clipped to zero; anything more negative is a PsdError.
cmat psd_sqrt(const cmat& r);

// Matrix helpers shared by the beamforming modules.

cmat hermitian_part(const cmat& a);

// Entry-wise phase with the convention arg(0) = 0.
double phase_of(cdouble z);

// Entry-wise exp(j * arg(a_ij)) scaled by `modulus`.
cmat unit_modulus(const cmat& a, double modulus);

// log(det(A)) for Hermitian positive-definite A via Cholesky.
double log_det_hpd(const cmat& a);

// Largest absolute eigenvalue of a Hermitian matrix.
double spectral_norm_hermitian(const cmat& a);

// Returns |lambda_max| / |lambda_min| of A^H A square-rooted (2-norm condition).
double condition_number(const cmat& a);

}  // namespace jsdm

#endif  // JSDM_NUMERICS_HPP
