#include "spinr/spaces.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace spinr {

namespace {

QuatMatrix F(int n, int i, int j) { return elementary(ElemKind::F, n, i, j); }
QuatMatrix E(int n, int i, int j) { return elementary(ElemKind::E, n, i, j); }

std::vector<QuatMatrix> sp_block_basis(int n) {
  // sp(n) embedded as the lower right n x n block of (n+1) x (n+1).
  std::vector<QuatMatrix> basis;
  const int N = n + 1;
  for (int p = 2; p <= N; ++p) {
    basis.push_back(qmul_i(F(N, p, p)));
    basis.push_back(qmul_j(F(N, p, p)));
    basis.push_back(qmul_k(F(N, p, p)));
  }
  for (int rr = 2; rr <= N; ++rr)
    for (int ss = rr + 1; ss <= N; ++ss) {
      basis.push_back(qmul_i(F(N, rr, ss)));
      basis.push_back(qmul_j(F(N, rr, ss)));
      basis.push_back(qmul_k(F(N, rr, ss)));
      basis.push_back(E(N, rr, ss));
    }
  return basis;
}

std::vector<QuatMatrix> su_block_basis(int n) {
  // su(n) embedded as the lower right n x n block of (n+1) x (n+1).
  std::vector<QuatMatrix> basis;
  const int N = n + 1;
  for (int p = 2; p <= N; ++p)
    for (int q = p + 1; q <= N; ++q) {
      basis.push_back(qmul_i(F(N, p, q)));
      basis.push_back(E(N, p, q));
    }
  for (int rr = 2; rr <= n; ++rr)
    basis.push_back(qmul_i(F(N, rr, rr) - F(N, rr + 1, rr + 1)));
  return basis;
}

// The spin(9) generators e_0.e_i inside Mat_16(R), each a signed sum of
// eight elementary skew matrices; entries are (row, col, sign) with the
// convention that E_{a,b} has -1 at (a,b) and +1 at (b,a), 1-based.
struct ETerm {
  int a, b, sign;
};

const ETerm kOp2Gen[8][8] = {
    {{1, 5, -1}, {2, 6, 1}, {3, 7, 1}, {4, 8, -1},
     {9, 13, 1}, {10, 14, -1}, {11, 15, -1}, {12, 16, 1}},
    {{1, 13, -1}, {2, 14, 1}, {3, 15, 1}, {4, 16, -1},
     {5, 9, 1}, {6, 10, -1}, {7, 11, -1}, {8, 12, 1}},
    {{1, 7, -1}, {2, 8, -1}, {3, 5, -1}, {4, 6, -1},
     {9, 15, -1}, {10, 16, -1}, {11, 13, -1}, {12, 14, -1}},
    {{1, 6, 1}, {2, 5, 1}, {3, 8, -1}, {4, 7, -1},
     {9, 14, 1}, {10, 13, 1}, {11, 16, -1}, {12, 15, -1}},
    {{1, 4, -1}, {2, 3, 1}, {5, 8, 1}, {6, 7, -1},
     {9, 12, -1}, {10, 11, 1}, {13, 16, 1}, {14, 15, -1}},
    {{1, 8, -1}, {2, 7, 1}, {3, 6, -1}, {4, 5, 1},
     {9, 16, -1}, {10, 15, 1}, {11, 14, -1}, {12, 13, 1}},
    {{1, 2, -1}, {3, 4, 1}, {5, 6, -1}, {7, 8, 1},
     {9, 10, -1}, {11, 12, 1}, {13, 14, -1}, {15, 16, 1}},
    {{1, 3, -1}, {2, 4, -1}, {5, 7, -1}, {6, 8, -1},
     {9, 11, -1}, {10, 12, -1}, {13, 15, -1}, {14, 16, -1}},
};

RealMat op2_generator(int i) {
  RealMat m = RealMat::Zero(16, 16);
  for (const auto& t : kOp2Gen[i - 1]) {
    m(t.a - 1, t.b - 1) -= t.sign;
    m(t.b - 1, t.a - 1) += t.sign;
  }
  return m;
}

// u(1) loop generators: exp(2 pi t X) closes at t = 1 and generates pi_1(H).
QuatMatrix loop_generator(SpaceId id, int n) {
  const int N = n + 1;
  if (id == SpaceId::CPnHermitian)
    return qmul_i(F(N, N, N) - F(N, 1, 1));
  if (id == SpaceId::CPnSymplectic) return qmul_i(F(N, 1, 1));
  throw std::invalid_argument("loop_generator: CP realisations only");
}

// Sum of the integer rotation speeds of a real skew matrix; throws if the
// spectrum is not integral.
int rotation_speed_sum(const RealMat& skew) {
  Eigen::JacobiSVD<RealMat> svd(skew);
  const auto& sv = svd.singularValues();
  double total = sv.sum() / 2.0;  // speeds appear twice among singular values
  long rounded = std::lround(total);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (std::abs(sv(i) - std::lround(sv(i))) > 1e-8)
      throw std::runtime_error("rotation speeds are not integral");
  if (std::abs(total - double(rounded)) > 1e-8)
    throw std::runtime_error("rotation speeds are not integral");
  return static_cast<int>(rounded);
}

void finalize_caches(ReductiveModel& model) {
  if (!model.has_matrix_model()) return;
  const int dh = static_cast<int>(model.h_basis.size());
  RealMat gram(dh, dh);
  for (int i = 0; i < dh; ++i)
    for (int j = 0; j < dh; ++j)
      gram(i, j) = b0(model.h_basis[i], model.h_basis[j]);
  model.h_gram_ldlt = gram.ldlt();
  model.m_b0_diag.resize(model.dim_m);
  for (int i = 0; i < model.dim_m; ++i)
    model.m_b0_diag(i) = b0(model.m_basis[i], model.m_basis[i]);
}

}  // namespace

std::string space_name(SpaceId id) {
  switch (id) {
    case SpaceId::CPnHermitian: return "cpn-hermitian";
    case SpaceId::CPnSymplectic: return "cpn-symplectic";
    case SpaceId::HPn: return "hpn";
    case SpaceId::OP2: return "op2";
  }
  return "?";
}

std::string group_name(SpaceId id, int n) {
  switch (id) {
    case SpaceId::CPnHermitian: return "SU(" + std::to_string(n + 1) + ")";
    case SpaceId::CPnSymplectic:
    case SpaceId::HPn: return "Sp(" + std::to_string(n + 1) + ")";
    case SpaceId::OP2: return "F4";
  }
  return "?";
}

int natural_rank(SpaceId id) {
  switch (id) {
    case SpaceId::CPnHermitian:
    case SpaceId::CPnSymplectic: return 2;
    case SpaceId::HPn: return 3;
    case SpaceId::OP2: return 9;
  }
  return 0;
}

double ReductiveModel::g_inner(const QuatMatrix& x, const QuatMatrix& y) const {
  const double a = params.a, t = params.t;
  if (space == SpaceId::CPnSymplectic) {
    // split into vertical and horizontal B0-orthogonal parts
    const QuatMatrix& xi2 = m_basis_unscaled[0];
    const QuatMatrix& xi3 = m_basis_unscaled[1];
    double xv2 = b0(x, xi2), xv3 = b0(x, xi3);
    double yv2 = b0(y, xi2), yv3 = b0(y, xi3);
    double vert = xv2 * yv2 + xv3 * yv3;  // B0(xi_i, xi_i) = 1
    double full = b0(x, y);
    return a * (full - vert) + 2.0 * a * t * vert;
  }
  return a * b0(x, y);
}

Eigen::VectorXd ReductiveModel::m_coords(const QuatMatrix& x) const {
  Eigen::VectorXd c(dim_m);
  for (int i = 0; i < dim_m; ++i)
    c(i) = b0(x, m_basis[i]) / m_b0_diag(i);
  return c;
}

Eigen::VectorXd ReductiveModel::h_coords(const QuatMatrix& x) const {
  const int dh = static_cast<int>(h_basis.size());
  Eigen::VectorXd rhs(dh);
  for (int i = 0; i < dh; ++i) rhs(i) = b0(x, h_basis[i]);
  return h_gram_ldlt.solve(rhs);
}

ReductiveModel build_model(SpaceId id, int n, MetricParams params, int aux,
                           SpinorConfig cfg) {
  if (params.a <= 0.0 || params.t <= 0.0)
    throw std::invalid_argument("build_model: metric parameters must be > 0");
  ReductiveModel model;
  model.space = id;
  model.n = n;
  model.params = params;
  model.s = aux;
  model.r = cfg.r > 0 ? cfg.r : natural_rank(id);
  model.m_twists = cfg.m;
  if (model.m_twists < 1 || model.m_twists % 2 == 0)
    throw std::invalid_argument("build_model: twist count must be odd");

  const int N = n + 1;
  const double a = params.a, t = params.t;

  switch (id) {
    case SpaceId::CPnHermitian: {
      if (n < 2) throw std::invalid_argument("build_model: hermitian needs n >= 2");
      model.h_basis.push_back([&] {
        QuatMatrix acc = F(N, 1, 1) * double(-n);
        for (int l = 2; l <= N; ++l) acc += F(N, l, l);
        return qmul_i(acc);
      }());
      for (auto& b : su_block_basis(n)) model.h_basis.push_back(b);
      const double sc = 1.0 / std::sqrt(2.0 * a);
      for (int p = 1; p <= n; ++p) {
        model.m_basis.push_back(qmul_i(F(N, 1, p + 1)) * sc);
        model.m_basis.push_back(E(N, 1, p + 1) * sc);
      }
      model.dim_m = 2 * n;
      if (model.r >= 2 && !lift_parity(id, n, model.s))
        throw std::invalid_argument("build_model: s fails the lifting parity");
      if (model.r == 1 && (model.s != 0 || !lift_parity(id, n, 0)))
        throw std::invalid_argument("build_model: no invariant spin structure");
      break;
    }
    case SpaceId::CPnSymplectic: {
      if (n < 1) throw std::invalid_argument("build_model: symplectic needs n >= 1");
      model.h_basis.push_back(qmul_i(F(N, 1, 1)));
      for (auto& b : sp_block_basis(n)) model.h_basis.push_back(b);
      model.m_basis_unscaled.push_back(qmul_k(F(N, 1, 1)) * -1.0);  // xi_2
      model.m_basis_unscaled.push_back(qmul_j(F(N, 1, 1)));         // xi_3
      for (int p = 1; p <= n; ++p) {
        model.m_basis_unscaled.push_back(qmul_j(F(N, 1, p + 1)));
        model.m_basis_unscaled.push_back(qmul_k(F(N, 1, p + 1)));
        model.m_basis_unscaled.push_back(qmul_i(F(N, 1, p + 1)));
        model.m_basis_unscaled.push_back(E(N, 1, p + 1));
      }
      const double sv = 1.0 / std::sqrt(2.0 * t * a);
      const double sh = 1.0 / std::sqrt(2.0 * a);
      for (size_t i = 0; i < model.m_basis_unscaled.size(); ++i)
        model.m_basis.push_back(model.m_basis_unscaled[i] * (i < 2 ? sv : sh));
      model.dim_m = 4 * n + 2;
      if (model.r >= 2 && !lift_parity(id, n, model.s))
        throw std::invalid_argument("build_model: s fails the lifting parity");
      if (model.r == 1 && model.s != 0)
        throw std::invalid_argument("build_model: spin case has no aux winding");
      break;
    }
    case SpaceId::HPn: {
      if (n < 2) throw std::invalid_argument("build_model: HPn needs n > 1");
      model.h_basis.push_back(qmul_i(F(N, 1, 1)));          // xi_1
      model.h_basis.push_back(qmul_k(F(N, 1, 1)) * -1.0);   // xi_2
      model.h_basis.push_back(qmul_j(F(N, 1, 1)));          // xi_3
      for (auto& b : sp_block_basis(n)) model.h_basis.push_back(b);
      const double sh = 1.0 / std::sqrt(2.0 * a);
      for (int p = 1; p <= n; ++p) {
        model.m_basis.push_back(qmul_j(F(N, 1, p + 1)) * sh);
        model.m_basis.push_back(qmul_k(F(N, 1, p + 1)) * sh);
        model.m_basis.push_back(qmul_i(F(N, 1, p + 1)) * sh);
        model.m_basis.push_back(E(N, 1, p + 1) * sh);
      }
      model.dim_m = 4 * n;
      if (model.s != 0 && model.s != 1)
        throw std::invalid_argument("build_model: HPn aux is trivial|nontrivial");
      break;
    }
    case SpaceId::OP2: {
      model.n = 2;
      model.dim_m = 16;
      for (int i = 1; i <= 8; ++i) {
        model.op2_generators.push_back(op2_generator(i));
        model.op2_pairs.emplace_back(0, i);
      }
      for (int i = 1; i <= 8; ++i)
        for (int j = i + 1; j <= 8; ++j) {
          model.op2_generators.push_back(op2_generator(i) * op2_generator(j));
          model.op2_pairs.emplace_back(i, j);
        }
      if (model.s != 0 && model.s != 1)
        throw std::invalid_argument("build_model: OP2 aux is trivial|nontrivial");
      break;
    }
  }
  finalize_caches(model);
  return model;
}

RealMat isotropy_matrix(const ReductiveModel& model, int h_index) {
  if (model.space == SpaceId::OP2) return model.op2_generators[h_index];
  const QuatMatrix& x = model.h_basis[h_index];
  RealMat a(model.dim_m, model.dim_m);
  for (int j = 0; j < model.dim_m; ++j)
    a.col(j) = model.m_coords(bracket(x, model.m_basis[j]));
  return a;
}

RealMat isotropy_matrix(const ReductiveModel& model,
                        const Eigen::VectorXd& h_coeffs) {
  RealMat a = RealMat::Zero(model.dim_m, model.dim_m);
  for (int i = 0; i < model.dim_h(); ++i)
    if (h_coeffs(i) != 0.0) a += h_coeffs(i) * isotropy_matrix(model, i);
  return a;
}

SpinAlgebraElement isotropy_so(const ReductiveModel& model, int h_index) {
  return SpinAlgebraElement::from_matrix(isotropy_matrix(model, h_index));
}

namespace {

// speed * (hat e_1 ^ hat e_2) embedded in the lower right 2x2 block of so(r)
RealMat so2_block(int r, double speed) {
  RealMat m = RealMat::Zero(r, r);
  if (r >= 2) {
    m(r - 1, r - 2) = speed;
    m(r - 2, r - 1) = -speed;
  }
  return m;
}

}  // namespace

RealMat aux_action(const ReductiveModel& model, int h_index) {
  const int r = model.r;
  switch (model.space) {
    case SpaceId::CPnHermitian: {
      const QuatMatrix& xi = model.h_basis[0];
      double c = b0(model.h_basis[h_index], xi) / b0(xi, xi);
      return so2_block(r, c * double(model.s) * double(model.n));
    }
    case SpaceId::CPnSymplectic: {
      const QuatMatrix& xi1 = model.h_basis[0];
      double c = b0(model.h_basis[h_index], xi1) / b0(xi1, xi1);
      return so2_block(r, c * double(model.s));
    }
    case SpaceId::HPn: {
      RealMat m = RealMat::Zero(r, r);
      if (model.s == 0) return m;
      // coefficients over (xi_1, xi_2, xi_3); sp(n) maps to zero
      double c1 = b0(model.h_basis[h_index], model.h_basis[0]);
      double c2 = b0(model.h_basis[h_index], model.h_basis[1]);
      double c3 = b0(model.h_basis[h_index], model.h_basis[2]);
      const int o = r - 3;
      // spin lifts of these match the su(2) matrices rho(xi_i) on Sigma_3
      m(o + 2, o + 1) += 2.0 * c1;  // xi_1 -> 2 e1^e2
      m(o + 1, o + 2) -= 2.0 * c1;
      m(o + 1, o + 0) -= 2.0 * c2;  // xi_2 -> -2 e0^e1
      m(o + 0, o + 1) += 2.0 * c2;
      m(o + 2, o + 0) -= 2.0 * c3;  // xi_3 -> -2 e0^e2
      m(o + 0, o + 2) += 2.0 * c3;
      return m;
    }
    case SpaceId::OP2: {
      RealMat m = RealMat::Zero(r, r);
      if (model.s == 0) return m;
      auto [i, j] = model.op2_pairs[h_index];
      // lambda_9 derivative: e_i.e_j -> 2 e_i ^ e_j, abstract label = so label
      const int o = r - 9;
      m(o + j, o + i) += 2.0;
      m(o + i, o + j) -= 2.0;
      return m;
    }
  }
  return RealMat::Zero(r, r);
}

RealMat aux_action(const ReductiveModel& model,
                   const Eigen::VectorXd& h_coeffs) {
  RealMat m = RealMat::Zero(model.r, model.r);
  for (int i = 0; i < model.dim_h(); ++i)
    if (h_coeffs(i) != 0.0) m += h_coeffs(i) * aux_action(model, i);
  return m;
}

bool lift_parity(SpaceId id, int n, int s) {
  if (id != SpaceId::CPnHermitian && id != SpaceId::CPnSymplectic)
    throw std::invalid_argument("lift_parity: CP realisations only");
  if (id == SpaceId::CPnHermitian && n < 2)
    throw std::invalid_argument(
        "lift_parity: the SO(2) x SO(2) covering case is unsupported");

  // Build the model without parity validation to read off rotation speeds.
  ReductiveModel probe;
  probe.space = id;
  probe.n = n;
  probe.s = s;
  probe.r = 2;
  const int N = n + 1;
  if (id == SpaceId::CPnHermitian) {
    probe.h_basis.push_back([&] {
      QuatMatrix acc = F(N, 1, 1) * double(-n);
      for (int l = 2; l <= N; ++l) acc += F(N, l, l);
      return qmul_i(acc);
    }());
    for (int p = 1; p <= n; ++p) {
      probe.m_basis.push_back(qmul_i(F(N, 1, p + 1)));
      probe.m_basis.push_back(E(N, 1, p + 1));
    }
    probe.dim_m = 2 * n;
  } else {
    probe.h_basis.push_back(qmul_i(F(N, 1, 1)));
    probe.m_basis.push_back(qmul_k(F(N, 1, 1)) * -1.0);
    probe.m_basis.push_back(qmul_j(F(N, 1, 1)));
    for (int p = 1; p <= n; ++p) {
      probe.m_basis.push_back(qmul_j(F(N, 1, p + 1)));
      probe.m_basis.push_back(qmul_k(F(N, 1, p + 1)));
      probe.m_basis.push_back(qmul_i(F(N, 1, p + 1)));
      probe.m_basis.push_back(E(N, 1, p + 1));
    }
    probe.dim_m = 4 * n + 2;
  }
  finalize_caches(probe);

  QuatMatrix gen = loop_generator(id, n);
  RealMat ad(probe.dim_m, probe.dim_m);
  for (int j = 0; j < probe.dim_m; ++j)
    ad.col(j) = probe.m_coords(bracket(gen, probe.m_basis[j]));
  int w_sigma = rotation_speed_sum(ad);

  // auxiliary winding of the loop: the xi-component of the generator times s
  int w_phi;
  if (id == SpaceId::CPnHermitian) {
    const QuatMatrix& xi = probe.h_basis[0];
    double c = b0(gen, xi) / b0(xi, xi);
    double speed = c * double(s) * double(n);
    w_phi = static_cast<int>(std::lround(speed));
    if (std::abs(speed - w_phi) > 1e-8)
      throw std::runtime_error("auxiliary winding is not integral");
  } else {
    w_phi = s;
  }
  // pi_1(SO(dim m)) = Z_2 for dim >= 3; lift exists iff both classes agree
  return (w_sigma % 2 + 2) % 2 == (w_phi % 2 + 2) % 2;
}

int isotropy_commutant_dim(const ReductiveModel& model, const Tolerance& tol) {
  const int d = model.dim_m;
  std::vector<Mat> ops;
  ops.reserve(model.dim_h());
  for (int k = 0; k < model.dim_h(); ++k) {
    RealMat a = isotropy_matrix(model, k);
    // T -> A T - T A on column-major vec(T)
    Mat op = Mat::Zero(d * d, d * d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        for (int kk = 0; kk < d; ++kk) {
          op(i + j * d, kk + j * d) += a(i, kk);
          op(i + j * d, i + kk * d) -= a(kk, j);
        }
      }
    ops.push_back(std::move(op));
  }
  Mat basis = joint_kernel_dense(ops, tol);
  return static_cast<int>(basis.cols());
}

}  // namespace spinr
