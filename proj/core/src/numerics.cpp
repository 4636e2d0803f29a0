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

#include "jsdm/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace jsdm {

namespace {

void require_square(const cmat& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
}

// Eigen returns ascending eigenvalues; flip to the descending convention.
EigDecomposition descending(const rvec& values, const cmat& vectors) {
  const Eigen::Index n = values.size();
  EigDecomposition out{rvec(n), cmat(vectors.rows(), n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = values(n - 1 - i);
    out.vectors.col(i) = vectors.col(n - 1 - i);
  }
  return out;
}

}  // namespace

void require_finite(const cmat& a, std::string_view what) {
  if (!a.allFinite()) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries");
  }
}

cmat hermitian_part(const cmat& a) { return 0.5 * (a + a.adjoint()); }

double phase_of(cdouble z) {
  if (z == cdouble(0.0, 0.0)) return 0.0;
  return std::arg(z);
}

cmat unit_modulus(const cmat& a, double modulus) {
  cmat out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out(i, j) = std::polar(modulus, phase_of(a(i, j)));
    }
  }
  return out;
}

EigDecomposition hermitian_eig(const cmat& a) {
  require_square(a, "hermitian_eig");
  require_finite(a, "hermitian_eig");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<cmat> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigen solver did not converge");
  }
  return descending(solver.eigenvalues(), solver.eigenvectors());
}

EigDecomposition generalized_hermitian_eig(const cmat& a, const cmat& b) {
  require_square(a, "generalized_hermitian_eig(A)");
  require_square(b, "generalized_hermitian_eig(B)");
  if (a.rows() != b.rows()) {
    throw DimensionError("generalized_hermitian_eig: A and B differ in size");
  }
  require_finite(a, "generalized_hermitian_eig(A)");
  require_finite(b, "generalized_hermitian_eig(B)");
  if (a.rows() == 0) return {};

  const cmat bh = hermitian_part(b);
  Eigen::SelfAdjointEigenSolver<cmat> bsolver(bh, Eigen::EigenvaluesOnly);
  const rvec& bvals = bsolver.eigenvalues();
  const double bnorm = bvals.cwiseAbs().maxCoeff();
  const double bmin = bvals(0);
  if (!(bmin > 1e-12 * bnorm)) {
    std::ostringstream msg;
    msg << "generalized_hermitian_eig: B is not positive definite (smallest eigenvalue "
        << bmin << ", norm " << bnorm << ")";
    throw DefinitenessError(msg.str(), bmin);
  }

  Eigen::LLT<cmat> llt(bh);
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError("generalized_hermitian_eig: Cholesky factorization of B failed",
                            bmin);
  }
  const cmat l = llt.matrixL();
  const auto lower = l.triangularView<Eigen::Lower>();
  // C = L^-1 A L^-H
  const cmat y = lower.solve(hermitian_part(a));
  const cmat c = lower.solve(y.adjoint().eval()).adjoint();

  Eigen::SelfAdjointEigenSolver<cmat> csolver(hermitian_part(c));
  if (csolver.info() != Eigen::Success) {
    throw Error("generalized_hermitian_eig: eigen solver did not converge");
  }
  cmat v = l.adjoint().triangularView<Eigen::Upper>().solve(csolver.eigenvectors());
  for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j).normalize();
  return descending(csolver.eigenvalues(), v);
}

SvdResult svd(const cmat& a) {
  require_finite(a, "svd");
  if (a.size() == 0) {
    throw DimensionError("svd: empty matrix");
  }
  Eigen::JacobiSVD<cmat> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

QrResult qr(const cmat& a) {
  require_finite(a, "qr");
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m < n || n == 0) {
    std::ostringstream msg;
    msg << "qr: need rows >= cols > 0, got " << m << "x" << n;
    throw DimensionError(msg.str());
  }
  Eigen::HouseholderQR<cmat> householder(a);
  cmat r = householder.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  cmat q = householder.householderQ() * cmat::Identity(m, n);

  const double anorm = a.norm();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag < 1e-12 * anorm || mag == 0.0) {
      std::ostringstream msg;
      msg << "qr: matrix is rank deficient (|R(" << i << "," << i << ")| = " << mag << ")";
      throw RankError(msg.str());
    }
    const cdouble d = r(i, i) / mag;
    q.col(i) *= d;
    r.row(i) *= std::conj(d);
    r(i, i) = mag;
  }
  return {std::move(q), std::move(r)};
}

cmat psd_sqrt(const cmat& r) {
  const EigDecomposition eig = hermitian_eig(r);
  const Eigen::Index n = eig.values.size();
  if (n == 0) return cmat(0, 0);
  const double norm = eig.values.cwiseAbs().maxCoeff();
  if (norm == 0.0) return cmat::Zero(n, n);
  rvec root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.values(i);
    if (lambda < -1e-6 * norm) {
      std::ostringstream msg;
      msg << "psd_sqrt: eigenvalue " << lambda << " is materially negative (norm " << norm
          << ")";
      throw PsdError(msg.str());
    }
    root(i) = std::sqrt(std::max(lambda, 0.0));
  }
  const cmat out = eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
  return hermitian_part(out);
}

double log_det_hpd(const cmat& a) {
  Eigen::LLT<cmat> llt(hermitian_part(a));
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError("log_det_hpd: matrix is not positive definite",
                            std::numeric_limits<double>::quiet_NaN());
  }
  const cmat& l = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i).real());
  return 2.0 * sum;
}

double spectral_norm_hermitian(const cmat& a) {
  require_square(a, "spectral_norm_hermitian");
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<cmat> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double condition_number(const cmat& a) {
  const rvec s = svd(a).singular_values;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace jsdm
