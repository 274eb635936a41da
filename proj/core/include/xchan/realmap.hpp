#pragma once

#include <Eigen/Dense>
#include <complex>

#include "xchan/errors.hpp"

namespace xchan {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Numeric tolerances shared by every rank / residual decision in the
/// library. rank_rel_tol is a relative singular-value cutoff,
/// residual_rel_tol a relative residual cutoff; both must lie in (0, 1).
struct TolerancePolicy {
  double rank_rel_tol = 1e-8;
  double residual_rel_tol = 1e-9;

  void validate() const {
    if (!(rank_rel_tol > 0.0 && rank_rel_tol < 1.0) ||
        !(residual_rel_tol > 0.0 && residual_rel_tol < 1.0))
      throw DomainError("TolerancePolicy: tolerances must lie in (0, 1)");
  }
};

// Complex-to-real isomorphism ("asymmetric signaling"). Each complex entry h
// becomes the 2x2 block [[Re -Im], [Im Re]]; vectors stack (Re, Im) pairs
// per antenna. The map is a ring homomorphism:
//   realify(A*B) == realify(A)*realify(B), realify(A+B) == realify(A)+realify(B).

/// N x M complex -> 2N x 2M real.
RMat realify_matrix(const CMat& h);

/// M-vector complex -> 2M real, interleaved [Re v1, Im v1, ..., Re vM, Im vM].
RVec realify_vector(const CVec& v);

/// Inverse of realify_vector.
CVec unrealify_vector(const RVec& v);

/// Realified image of multiplication by j: each (Re, Im) pair maps to
/// (-Im, Re). jrotate(realify(v)) == realify(j*v); jrotate o jrotate == -I.
/// Throws ShapeError on odd length (malformed realified vector).
RVec jrotate(const RVec& v);

/// Orthonormal basis of the kernel of a (column count = cols - numeric rank;
/// may be empty). A * basis vanishes to within residual_rel_tol.
RMat null_space(const RMat& a, const TolerancePolicy& pol = {});
CMat null_space(const CMat& a, const TolerancePolicy& pol = {});

/// Number of singular values above rank_rel_tol times the largest one;
/// 0 for an all-zero or empty matrix.
Eigen::Index numeric_rank(const RMat& a, const TolerancePolicy& pol = {});
Eigen::Index numeric_rank(const CMat& a, const TolerancePolicy& pol = {});

/// Minimum-norm solution X of A*X = B. Throws UnsolvableError when the
/// relative residual ||A*X - B|| / ||B|| exceeds residual_rel_tol.
RMat solve_exact(const RMat& a, const RMat& b, const TolerancePolicy& pol = {});
CMat solve_exact(const CMat& a, const CMat& b, const TolerancePolicy& pol = {});

/// ||A*v|| / (||A||_F ||v||), the residual used by the nulling checks.
double nulling_residual(const CMat& a, const CVec& v);
double nulling_residual(const RMat& a, const RVec& v);

}  // namespace xchan
