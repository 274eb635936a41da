#include "xchan/realmap.hpp"

#include <Eigen/SVD>

namespace xchan {

RMat realify_matrix(const CMat& h) {
  RMat out(2 * h.rows(), 2 * h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      const double re = h(i, j).real();
      const double im = h(i, j).imag();
      out(2 * i, 2 * j) = re;
      out(2 * i, 2 * j + 1) = -im;
      out(2 * i + 1, 2 * j) = im;
      out(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return out;
}

RVec realify_vector(const CVec& v) {
  RVec out(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(2 * i) = v(i).real();
    out(2 * i + 1) = v(i).imag();
  }
  return out;
}

CVec unrealify_vector(const RVec& v) {
  if (v.size() % 2 != 0)
    throw ShapeError("unrealify_vector: odd length " + std::to_string(v.size()));
  CVec out(v.size() / 2);
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = Complex(v(2 * i), v(2 * i + 1));
  return out;
}

RVec jrotate(const RVec& v) {
  if (v.size() % 2 != 0)
    throw ShapeError("jrotate: odd length " + std::to_string(v.size()));
  RVec out(v.size());
  for (Eigen::Index i = 0; i < v.size() / 2; ++i) {
    out(2 * i) = -v(2 * i + 1);
    out(2 * i + 1) = v(2 * i);
  }
  return out;
}

namespace {

template <typename Mat>
Eigen::Index rank_impl(const Mat& a, const TolerancePolicy& pol) {
  pol.validate();
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = pol.rank_rel_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

template <typename Mat>
Mat null_space_impl(const Mat& a, const TolerancePolicy& pol) {
  pol.validate();
  if (a.cols() == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cutoff = pol.rank_rel_tol * sv(0);
    while (r < sv.size() && sv(r) > cutoff) ++r;
  }
  return svd.matrixV().rightCols(a.cols() - r);
}

template <typename Mat>
Mat solve_impl(const Mat& a, const Mat& b, const TolerancePolicy& pol) {
  pol.validate();
  if (a.rows() != b.rows())
    throw ShapeError("solve_exact: row mismatch " + std::to_string(a.rows()) + " vs " +
                     std::to_string(b.rows()));
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(pol.rank_rel_tol);
  Mat x = svd.solve(b);
  const double bnorm = b.norm();
  const double resid = (a * x - b).norm();
  if (resid > pol.residual_rel_tol * (bnorm > 0.0 ? bnorm : 1.0))
    throw UnsolvableError("solve_exact: residual " + std::to_string(resid) +
                          " exceeds tolerance");
  return x;
}

}  // namespace

RMat null_space(const RMat& a, const TolerancePolicy& pol) { return null_space_impl(a, pol); }
CMat null_space(const CMat& a, const TolerancePolicy& pol) { return null_space_impl(a, pol); }

Eigen::Index numeric_rank(const RMat& a, const TolerancePolicy& pol) { return rank_impl(a, pol); }
Eigen::Index numeric_rank(const CMat& a, const TolerancePolicy& pol) { return rank_impl(a, pol); }

RMat solve_exact(const RMat& a, const RMat& b, const TolerancePolicy& pol) {
  return solve_impl(a, b, pol);
}
CMat solve_exact(const CMat& a, const CMat& b, const TolerancePolicy& pol) {
  return solve_impl(a, b, pol);
}

double nulling_residual(const CMat& a, const CVec& v) {
  const double scale = a.norm() * v.norm();
  if (scale == 0.0) return 0.0;
  return (a * v).norm() / scale;
}

double nulling_residual(const RMat& a, const RVec& v) {
  const double scale = a.norm() * v.norm();
  if (scale == 0.0) return 0.0;
  return (a * v).norm() / scale;
}

}  // namespace xchan
