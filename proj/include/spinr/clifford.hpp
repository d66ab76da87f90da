#pragma once

#include <map>
#include <utility>
#include <vector>

#include "spinr/numlin.hpp"

// Exterior-forms model of the complex spin representation. Sigma_n is
// realised on the wedge powers of span{y_1..y_k} (n = 2k or 2k+1), with a
// basis monomial encoded as a bitmask over {1..k}. Clifford generators act by
// wedge and contraction:
//
//   e_{2j-1} . eta = i ( x_j _| eta + y_j ^ eta )
//   e_{2j}   . eta = y_j ^ eta - x_j _| eta
//   e_0      . eta = i eta_even - i eta_odd        (odd n only)
//
// with the contraction pairing x_j _| y_j = 1 and alternating signs
// x_j _| (y_{j1} ^ ... ^ y_{jl}) = (-1)^{pos-1} (monomial with y_j removed).
// The y-monomial basis is orthonormal for the Hermitian product, which is
// conjugate-linear in the FIRST argument throughout this project.

namespace spinr {

/// Dimension 2^floor(n/2) of Sigma_n.
inline int spinor_dim(int n) { return 1 << (n / 2); }

/// Complex spinor in the exterior-forms model; c(mask) is the coefficient of
/// the monomial with the set bits of `mask` as indices.
struct Spinor {
  int n = 0;
  Vec c;

  static Spinor zero(int n) { return {n, Vec::Zero(spinor_dim(n))}; }
  static Spinor basis(int n, unsigned mask) {
    Spinor s = zero(n);
    s.c(mask) = 1.0;
    return s;
  }
  double norm() const { return c.norm(); }
};

/// Apply the Clifford generator e_gen to a coefficient vector over Sigma_n.
/// gen = 0 denotes e_0 (odd n only); gen = 1..2k the paired generators.
Vec apply_generator(int n, int gen, const Vec& v);

/// The generator as a sparse matrix on Sigma_n.
SpMat generator_matrix(int n, int gen);

inline Spinor clifford_apply(int gen, const Spinor& psi) {
  return {psi.n, apply_generator(psi.n, gen, psi.c)};
}

/// Hermitian product, conjugate-linear in the first argument.
inline Complex herm(const Spinor& a, const Spinor& b) { return a.c.dot(b.c); }

/// Wedge product of two forms given by coefficient vectors (k bits).
Vec wedge_product(const Vec& a, const Vec& b, int kbits);

// ---------------------------------------------------------------------------
// so(n) elements and spin lifts.
//
// An element of so(n) is written over the basis e_i ^ e_j (i < j), the skew
// endomorphism sending e_i -> e_j and e_j -> -e_i. Basis labels run over
// 0..n-1; for odd n label 0 is e_0, for even n label a means e_{a+1}. The
// spin lift follows 2 e_i ^ e_j -> e_i . e_j, so a coefficient a_{ij} on
// e_i ^ e_j contributes (a_{ij}/2) e_i . e_j.
// ---------------------------------------------------------------------------

/// Clifford generator index attached to an so(n) basis label.
inline int so_label_to_gen(int n, int label) {
  return (n % 2 == 1) ? label : label + 1;
}

struct SpinAlgebraElement {
  int n = 0;
  std::map<std::pair<int, int>, double> terms;  // (i<j) -> coefficient

  static SpinAlgebraElement zero(int n) { return {n, {}}; }
  static SpinAlgebraElement from_matrix(const RealMat& a, double drop = 1e-14);
  RealMat to_matrix() const;

  SpinAlgebraElement& add(int i, int j, double coeff);
};

/// Spin lift of a complex antisymmetric n x n matrix as an operator on
/// Sigma_n: sum over a<b of (C(a,b)/2) e_a . e_b.
SpMat lift_so_matrix(int n, const Mat& c);

inline SpMat spin_lift_matrix(const SpinAlgebraElement& a) {
  return lift_so_matrix(a.n, a.to_matrix().cast<Complex>());
}

Spinor spin_lift_apply(const SpinAlgebraElement& a, const Spinor& psi);

/// Clifford action of the tangent vector sum w_a e_a (no lift factor).
SpMat vector_cliff_matrix(int n, const Eigen::VectorXd& w);

/// Clifford action of the real 2-form B (B(a,b) coefficient on e_a ^ e_b):
/// sum over a<b of B(a,b) e_a . e_b.
SpMat two_form_cliff_matrix(int n, const RealMat& b);

// ---------------------------------------------------------------------------
// Twisted modules Sigma_n (x) Sigma_r^{(x)m}, stored as dense coefficient
// vectors. Flat index = ((mask * d_r + a_1) * d_r + a_2) ... over the m aux
// factors, d_r = spinor_dim(r). Aux factors may carry either the
// exterior-forms model of Sigma_r or any other matrix realisation of the same
// dimension; the apply helpers below take the factor operators explicitly.
// ---------------------------------------------------------------------------

struct TwistedSpinor {
  int n = 0, r = 1, m = 1;
  Vec c;

  int tangent_dim() const { return spinor_dim(n); }
  int aux_dim() const { return spinor_dim(r); }
  long total_dim() const {
    long t = tangent_dim();
    for (int j = 0; j < m; ++j) t *= aux_dim();
    return t;
  }

  static TwistedSpinor zero(int n, int r, int m);
  /// Pure tensor: tangent monomial `mask` with aux factor basis indices.
  static TwistedSpinor basis(int n, int r, int m, unsigned mask,
                             const std::vector<int>& aux);
  /// tangent (x) aux_1 (x) ... (x) aux_m from explicit factors.
  static TwistedSpinor tensor(const Spinor& tangent,
                              const std::vector<Vec>& aux_factors, int r);

  double norm() const { return c.norm(); }
};

inline Complex herm(const TwistedSpinor& a, const TwistedSpinor& b) {
  return a.c.dot(b.c);
}

/// op acting on the tangent factor.
Vec apply_tangent_op(int tangent_dim, int aux_dim, int m, const SpMat& op,
                     const Vec& v);
/// op acting on aux factor `factor` (0-based).
Vec apply_aux_op(int tangent_dim, int aux_dim, int m, int factor, const Mat& op,
                 const Vec& v);
/// Leibniz sum of op over all m aux factors.
Vec apply_aux_op_all(int tangent_dim, int aux_dim, int m, const Mat& op,
                     const Vec& v);

/// Derived tensor-product action of (tangent, aux) in so(n) x so(r):
/// spin-lift of tangent on the Sigma_n factor plus the Leibniz sum of the
/// spin-lift of aux over the m twist factors.
TwistedSpinor twisted_apply(const SpinAlgebraElement& tangent,
                            const SpinAlgebraElement& aux,
                            const TwistedSpinor& psi);

}  // namespace spinr
