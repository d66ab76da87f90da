#include "spinr/numlin.hpp"

#include <Eigen/SVD>
#include <cassert>
#include <stdexcept>

namespace spinr {

QuatMatrix QuatMatrix::operator+(const QuatMatrix& o) const {
  QuatMatrix r(size());
  r.re = re + o.re;
  r.im = im + o.im;
  r.jm = jm + o.jm;
  r.km = km + o.km;
  return r;
}

QuatMatrix QuatMatrix::operator-(const QuatMatrix& o) const {
  QuatMatrix r(size());
  r.re = re - o.re;
  r.im = im - o.im;
  r.jm = jm - o.jm;
  r.km = km - o.km;
  return r;
}

QuatMatrix QuatMatrix::operator*(const QuatMatrix& o) const {
  if (size() != o.size()) throw std::invalid_argument("QuatMatrix size mismatch");
  QuatMatrix r(size());
  r.re = re * o.re - im * o.im - jm * o.jm - km * o.km;
  r.im = re * o.im + im * o.re + jm * o.km - km * o.jm;
  r.jm = re * o.jm - im * o.km + jm * o.re + km * o.im;
  r.km = re * o.km + im * o.jm - jm * o.im + km * o.re;
  return r;
}

QuatMatrix QuatMatrix::operator*(double s) const {
  QuatMatrix r(size());
  r.re = re * s;
  r.im = im * s;
  r.jm = jm * s;
  r.km = km * s;
  return r;
}

QuatMatrix& QuatMatrix::operator+=(const QuatMatrix& o) {
  re += o.re;
  im += o.im;
  jm += o.jm;
  km += o.km;
  return *this;
}

double QuatMatrix::norm() const {
  return std::sqrt(re.squaredNorm() + im.squaredNorm() + jm.squaredNorm() +
                   km.squaredNorm());
}

bool QuatMatrix::is_zero(double tol) const { return norm() <= tol; }

QuatMatrix operator*(double s, const QuatMatrix& m) { return m * s; }

QuatMatrix qmul_i(const QuatMatrix& m) {
  QuatMatrix r(m.size());
  r.re = -m.im;
  r.im = m.re;
  r.jm = -m.km;
  r.km = m.jm;
  return r;
}

QuatMatrix qmul_j(const QuatMatrix& m) {
  QuatMatrix r(m.size());
  r.re = -m.jm;
  r.im = m.km;
  r.jm = m.re;
  r.km = -m.im;
  return r;
}

QuatMatrix qmul_k(const QuatMatrix& m) {
  QuatMatrix r(m.size());
  r.re = -m.km;
  r.im = -m.jm;
  r.jm = m.im;
  r.km = m.re;
  return r;
}

QuatMatrix elementary(ElemKind kind, int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n)
    throw std::out_of_range("elementary: index out of range");
  QuatMatrix m(n);
  if (kind == ElemKind::E) {
    if (i >= j) throw std::out_of_range("elementary: E requires i < j");
    m.re(i - 1, j - 1) = -1.0;
    m.re(j - 1, i - 1) = 1.0;
  } else {
    if (i > j) throw std::out_of_range("elementary: F requires i <= j");
    if (i == j) {
      m.re(i - 1, i - 1) = 1.0;
    } else {
      m.re(i - 1, j - 1) = 1.0;
      m.re(j - 1, i - 1) = 1.0;
    }
  }
  return m;
}

double b0(const QuatMatrix& x, const QuatMatrix& y) {
  if (x.size() != y.size()) throw std::invalid_argument("b0: size mismatch");
  // Only the real part of the product contributes to Re(tr).
  double tr = (x.re * y.re - x.im * y.im - x.jm * y.jm - x.km * y.km).trace();
  return -tr;
}

QuatMatrix bracket(const QuatMatrix& x, const QuatMatrix& y) {
  return x * y - y * x;
}

namespace {

void fix_phases(Mat& basis, double drop_tol) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      double a = std::abs(basis(r, c));
      if (a > best + drop_tol) {
        best = a;
        imax = r;
      }
    }
    if (best > 0.0) {
      Complex z = basis(imax, c);
      basis.col(c) *= std::conj(z) / std::abs(z);
    }
  }
}

Mat kernel_of_stacked(const Mat& stacked, Eigen::Index cols,
                      const Tolerance& tol) {
  if (stacked.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cutoff = tol.rank_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  Eigen::Index kdim = cols - rank;
  Mat basis(cols, kdim);
  // Thin V has min(rows, cols) columns; kernel directions beyond them are
  // untouched by the row space and must be filled in by completion.
  Eigen::Index vcols = svd.matrixV().cols();
  if (vcols >= cols) {
    basis = svd.matrixV().rightCols(kdim);
  } else {
    // rows < cols: complete V's column space to the full space, the
    // completion plus the trailing V columns spans the kernel.
    Mat v = svd.matrixV();
    Mat proj = Mat::Identity(cols, cols) - v.leftCols(rank) * v.leftCols(rank).adjoint();
    Eigen::BDCSVD<Mat> svd2(proj, Eigen::ComputeThinU);
    basis = svd2.matrixU().leftCols(kdim);
  }
  return basis;
}

}  // namespace

Mat kernel_basis(const Mat& a, const Tolerance& tol) {
  Mat b = kernel_of_stacked(a, a.cols(), tol);
  fix_phases(b, tol.drop_tol);
  return b;
}

Mat joint_kernel_dense(const std::vector<Mat>& ops, const Tolerance& tol) {
  if (!tol.valid()) throw std::invalid_argument("joint_kernel: bad tolerance");
  if (ops.empty()) throw std::invalid_argument("joint_kernel: no operators");
  Eigen::Index cols = ops[0].cols();
  Eigen::Index total_rows = 0;
  for (const auto& op : ops) {
    if (op.cols() != cols)
      throw std::invalid_argument("joint_kernel: column dimension mismatch");
    total_rows += op.rows();
  }

  Mat basis;
  if (total_rows <= 20000) {
    Mat stacked(total_rows, cols);
    Eigen::Index at = 0;
    for (const auto& op : ops) {
      stacked.middleRows(at, op.rows()) = op;
      at += op.rows();
    }
    basis = kernel_of_stacked(stacked, cols, tol);
  } else {
    // Deflation: kernel of the first operator, restrict the rest to it.
    basis = kernel_of_stacked(ops[0], cols, tol);
    for (size_t k = 1; k < ops.size() && basis.cols() > 0; ++k) {
      Mat restricted = ops[k] * basis;
      Mat sub = kernel_of_stacked(restricted, basis.cols(), tol);
      basis = basis * sub;
    }
  }
  fix_phases(basis, tol.drop_tol);
  return basis;
}

Mat joint_kernel(const std::vector<SpMat>& ops, const Tolerance& tol) {
  std::vector<Mat> dense;
  dense.reserve(ops.size());
  for (const auto& op : ops) dense.emplace_back(Mat(op));
  return joint_kernel_dense(dense, tol);
}

double max_residual(const std::vector<SpMat>& ops, const Mat& basis) {
  double worst = 0.0;
  for (const auto& op : ops)
    for (Eigen::Index c = 0; c < basis.cols(); ++c)
      worst = std::max(worst, (op * basis.col(c)).norm());
  return worst;
}

}  // namespace spinr
