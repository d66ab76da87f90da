#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <vector>

// Sparse/dense complex and quaternionic linear algebra shared by all modules:
// elementary matrices, the trace form B0, commutators, and joint-kernel
// computation with explicit tolerances.

namespace spinr {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<Complex>;

inline constexpr Complex I{0.0, 1.0};

struct Tolerance {
  double rank_tol = 1e-9;      // singular-value cutoff for rank decisions
  double residual_tol = 1e-8;  // acceptance threshold for kernel residuals
  double drop_tol = 1e-12;     // entries below this are treated as zero

  bool valid() const {
    return rank_tol > 0.0 && drop_tol > 0.0 && drop_tol <= residual_tol;
  }
};

/// Quaternionic square matrix stored as four real parts (1, i, j, k).
class QuatMatrix {
 public:
  QuatMatrix() = default;
  explicit QuatMatrix(int n)
      : re(RealMat::Zero(n, n)),
        im(RealMat::Zero(n, n)),
        jm(RealMat::Zero(n, n)),
        km(RealMat::Zero(n, n)) {}

  int size() const { return static_cast<int>(re.rows()); }

  RealMat re, im, jm, km;

  QuatMatrix operator+(const QuatMatrix& o) const;
  QuatMatrix operator-(const QuatMatrix& o) const;
  QuatMatrix operator*(const QuatMatrix& o) const;  // quaternionic product
  QuatMatrix operator*(double s) const;
  QuatMatrix& operator+=(const QuatMatrix& o);

  double norm() const;
  bool is_zero(double tol = 1e-12) const;
};

QuatMatrix operator*(double s, const QuatMatrix& m);

// Left multiplication by the quaternion units.
QuatMatrix qmul_i(const QuatMatrix& m);
QuatMatrix qmul_j(const QuatMatrix& m);
QuatMatrix qmul_k(const QuatMatrix& m);

enum class ElemKind { E, F };

/// Elementary matrices in the sign convention used throughout: E has -1 at
/// (i,j) and +1 at (j,i); F has +1 at (i,j) and (j,i); F(i,i) is the single
/// diagonal unit. Indices are 1-based.
QuatMatrix elementary(ElemKind kind, int n, int i, int j);

/// B0(X,Y) = -Re(tr(XY)), trace over the quaternionic product.
double b0(const QuatMatrix& x, const QuatMatrix& y);

/// Commutator XY - YX.
QuatMatrix bracket(const QuatMatrix& x, const QuatMatrix& y);

/// Orthonormal basis (columns) of the intersection of the kernels of `ops`.
/// Every operator must share the column dimension. Uses one SVD of the
/// stacked operator while the total row count stays small, and operator-by-
/// operator deflation beyond that. Output is deterministic: basis vectors are
/// phase-normalised so their largest entry is real positive.
Mat joint_kernel(const std::vector<SpMat>& ops, const Tolerance& tol);
Mat joint_kernel_dense(const std::vector<Mat>& ops, const Tolerance& tol);

/// Kernel of a single dense matrix, orthonormal columns.
Mat kernel_basis(const Mat& a, const Tolerance& tol);

/// Largest residual max_i ||ops[i] * v|| over the given vectors.
double max_residual(const std::vector<SpMat>& ops, const Mat& basis);

}  // namespace spinr
