#include "spinr/clifford.hpp"

#include <bit>
#include <stdexcept>

namespace spinr {

namespace {

inline int sign_below(unsigned mask, int bit) {
  unsigned below = mask & ((1u << bit) - 1u);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

}  // namespace

Vec apply_generator(int n, int gen, const Vec& v) {
  const int k = n / 2;
  const int dim = 1 << k;
  if (v.size() != dim) throw std::invalid_argument("apply_generator: bad dim");
  Vec out = Vec::Zero(dim);
  if (gen == 0) {
    if (n % 2 == 0)
      throw std::out_of_range("apply_generator: e_0 needs odd dimension");
    for (int mask = 0; mask < dim; ++mask) {
      if (v(mask) == 0.0) continue;
      Complex f = (std::popcount(unsigned(mask)) % 2 == 0) ? I : -I;
      out(mask) += f * v(mask);
    }
    return out;
  }
  if (gen < 1 || gen > 2 * k)
    throw std::out_of_range("apply_generator: index out of range");
  const int j = (gen + 1) / 2;      // 1-based pair index
  const unsigned bit = 1u << (j - 1);
  const bool odd_gen = (gen % 2 == 1);
  for (int mask = 0; mask < dim; ++mask) {
    Complex val = v(mask);
    if (val == 0.0) continue;
    double s = sign_below(unsigned(mask), j - 1);
    if (mask & bit) {
      // contraction: x_j _| eta
      Complex f = odd_gen ? (I * s) : Complex(-s);
      out(mask & ~bit) += f * val;
    } else {
      // wedge: y_j ^ eta
      Complex f = odd_gen ? (I * s) : Complex(s);
      out(mask | bit) += f * val;
    }
  }
  return out;
}

namespace {

// Image of a single monomial under e_gen: exactly one monomial with a
// coefficient in {+-1, +-i}.
inline std::pair<unsigned, Complex> generator_on_monomial(int n, int gen,
                                                          unsigned mask) {
  if (gen == 0) {
    Complex f = (std::popcount(mask) % 2 == 0) ? I : -I;
    return {mask, f};
  }
  const int j = (gen + 1) / 2;
  const unsigned bit = 1u << (j - 1);
  double s = sign_below(mask, j - 1);
  const bool odd_gen = (gen % 2 == 1);
  if (mask & bit) {
    Complex f = odd_gen ? (I * s) : Complex(-s);
    return {mask & ~bit, f};
  }
  Complex f = odd_gen ? (I * s) : Complex(s);
  return {mask | bit, f};
}

}  // namespace

SpMat generator_matrix(int n, int gen) {
  const int dim = spinor_dim(n);
  SpMat m(dim, dim);
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(dim);
  for (int col = 0; col < dim; ++col) {
    auto [row, f] = generator_on_monomial(n, gen, unsigned(col));
    trip.emplace_back(int(row), col, f);
  }
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Vec wedge_product(const Vec& a, const Vec& b, int kbits) {
  const int dim = 1 << kbits;
  Vec out = Vec::Zero(dim);
  for (int ma = 0; ma < dim; ++ma) {
    if (a(ma) == 0.0) continue;
    for (int mb = 0; mb < dim; ++mb) {
      if (b(mb) == 0.0) continue;
      if (ma & mb) continue;
      // sign of sorting the concatenation (ma ascending, then mb ascending)
      int inv = 0;
      for (int i = 0; i < kbits; ++i)
        if (mb & (1 << i))
          inv += std::popcount(unsigned(ma) >> (i + 1));
      double s = (inv % 2 == 0) ? 1.0 : -1.0;
      out(ma | mb) += s * a(ma) * b(mb);
    }
  }
  return out;
}

SpinAlgebraElement SpinAlgebraElement::from_matrix(const RealMat& a,
                                                   double drop) {
  SpinAlgebraElement e;
  e.n = static_cast<int>(a.rows());
  for (int i = 0; i < e.n; ++i)
    for (int j = i + 1; j < e.n; ++j) {
      // a_{ij} e_i ^ e_j has matrix entry +a_{ij} at (j,i).
      double coeff = a(j, i);
      if (std::abs(coeff) > drop) e.terms[{i, j}] = coeff;
    }
  return e;
}

RealMat SpinAlgebraElement::to_matrix() const {
  RealMat a = RealMat::Zero(n, n);
  for (const auto& [ij, coeff] : terms) {
    a(ij.second, ij.first) += coeff;
    a(ij.first, ij.second) -= coeff;
  }
  return a;
}

SpinAlgebraElement& SpinAlgebraElement::add(int i, int j, double coeff) {
  if (i > j) {
    std::swap(i, j);
    coeff = -coeff;
  }
  terms[{i, j}] += coeff;
  return *this;
}

SpMat lift_so_matrix(int n, const Mat& c) {
  const int dim = spinor_dim(n);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // the matrix of a_{ij} e_i ^ e_j carries +a_{ij} at (j,i)
      Complex coeff = c(j, i);
      if (coeff == 0.0) continue;
      int gi = so_label_to_gen(n, i);
      int gj = so_label_to_gen(n, j);
      for (int col = 0; col < dim; ++col) {
        auto [m1, f1] = generator_on_monomial(n, gj, unsigned(col));
        auto [m2, f2] = generator_on_monomial(n, gi, m1);
        trip.emplace_back(int(m2), col, coeff * 0.5 * f1 * f2);
      }
    }
  }
  SpMat m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Spinor spin_lift_apply(const SpinAlgebraElement& a, const Spinor& psi) {
  if (a.n != psi.n) throw std::invalid_argument("spin_lift_apply: dim mismatch");
  Vec out = Vec::Zero(psi.c.size());
  for (const auto& [ij, coeff] : a.terms) {
    int gi = so_label_to_gen(a.n, ij.first);
    int gj = so_label_to_gen(a.n, ij.second);
    out += (0.5 * coeff) *
           apply_generator(a.n, gi, apply_generator(a.n, gj, psi.c));
  }
  return {psi.n, out};
}

SpMat vector_cliff_matrix(int n, const Eigen::VectorXd& w) {
  const int dim = spinor_dim(n);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int a = 0; a < n; ++a) {
    if (w(a) == 0.0) continue;
    int gen = so_label_to_gen(n, a);
    for (int col = 0; col < dim; ++col) {
      auto [row, f] = generator_on_monomial(n, gen, unsigned(col));
      trip.emplace_back(int(row), col, w(a) * f);
    }
  }
  SpMat m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SpMat two_form_cliff_matrix(int n, const RealMat& b) {
  const int dim = spinor_dim(n);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (b(i, j) == 0.0) continue;
      int gi = so_label_to_gen(n, i);
      int gj = so_label_to_gen(n, j);
      for (int col = 0; col < dim; ++col) {
        auto [m1, f1] = generator_on_monomial(n, gj, unsigned(col));
        auto [m2, f2] = generator_on_monomial(n, gi, m1);
        trip.emplace_back(int(m2), col, b(i, j) * f1 * f2);
      }
    }
  }
  SpMat m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

TwistedSpinor TwistedSpinor::zero(int n, int r, int m) {
  TwistedSpinor t;
  t.n = n;
  t.r = r;
  t.m = m;
  t.c = Vec::Zero(t.total_dim());
  return t;
}

TwistedSpinor TwistedSpinor::basis(int n, int r, int m, unsigned mask,
                                   const std::vector<int>& aux) {
  TwistedSpinor t = zero(n, r, m);
  long idx = mask;
  for (int j = 0; j < m; ++j) idx = idx * t.aux_dim() + aux[j];
  t.c(idx) = 1.0;
  return t;
}

TwistedSpinor TwistedSpinor::tensor(const Spinor& tangent,
                                    const std::vector<Vec>& aux_factors,
                                    int r) {
  TwistedSpinor t = zero(tangent.n, r, static_cast<int>(aux_factors.size()));
  const int ad = t.aux_dim();
  const int m = t.m;
  std::vector<int> idx(m, 0);
  for (int mask = 0; mask < t.tangent_dim(); ++mask) {
    if (tangent.c(mask) == 0.0) continue;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      Complex val = tangent.c(mask);
      long flat = mask;
      for (int j = 0; j < m; ++j) {
        val *= aux_factors[j](idx[j]);
        flat = flat * ad + idx[j];
      }
      if (val != 0.0) t.c(flat) += val;
      int j = m - 1;
      while (j >= 0 && ++idx[j] == ad) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  return t;
}

Vec apply_tangent_op(int tangent_dim, int aux_dim, int m, const SpMat& op,
                     const Vec& v) {
  long block = 1;
  for (int j = 0; j < m; ++j) block *= aux_dim;
  Vec out = Vec::Zero(v.size());
  for (int col = 0; col < op.outerSize(); ++col) {
    for (SpMat::InnerIterator it(op, col); it; ++it) {
      out.segment(it.row() * block, block) +=
          it.value() * v.segment(col * block, block);
    }
  }
  return out;
}

Vec apply_aux_op(int tangent_dim, int aux_dim, int m, int factor,
                 const Mat& op, const Vec& v) {
  long inner = 1;  // stride of the chosen factor
  for (int j = factor + 1; j < m; ++j) inner *= aux_dim;
  long outer = tangent_dim;
  for (int j = 0; j < factor; ++j) outer *= aux_dim;
  Vec out = Vec::Zero(v.size());
  const long factor_block = inner * aux_dim;
  for (long o = 0; o < outer; ++o) {
    const long base = o * factor_block;
    for (int a = 0; a < aux_dim; ++a) {
      for (int b = 0; b < aux_dim; ++b) {
        Complex x = op(a, b);
        if (x == 0.0) continue;
        out.segment(base + a * inner, inner) +=
            x * v.segment(base + b * inner, inner);
      }
    }
  }
  return out;
}

Vec apply_aux_op_all(int tangent_dim, int aux_dim, int m, const Mat& op,
                     const Vec& v) {
  Vec out = Vec::Zero(v.size());
  for (int j = 0; j < m; ++j)
    out += apply_aux_op(tangent_dim, aux_dim, m, j, op, v);
  return out;
}

TwistedSpinor twisted_apply(const SpinAlgebraElement& tangent,
                            const SpinAlgebraElement& aux,
                            const TwistedSpinor& psi) {
  if (tangent.n != psi.n || aux.n != psi.r)
    throw std::invalid_argument("twisted_apply: dimension mismatch");
  TwistedSpinor out = TwistedSpinor::zero(psi.n, psi.r, psi.m);
  SpMat t = spin_lift_matrix(tangent);
  out.c = apply_tangent_op(psi.tangent_dim(), psi.aux_dim(), psi.m, t, psi.c);
  if (!aux.terms.empty() && psi.r >= 2) {
    Mat a = Mat(spin_lift_matrix(aux));
    out.c += apply_aux_op_all(psi.tangent_dim(), psi.aux_dim(), psi.m, a,
                              psi.c);
  }
  return out;
}

}  // namespace spinr
