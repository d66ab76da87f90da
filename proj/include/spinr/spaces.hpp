#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinr/clifford.hpp"
#include "spinr/numlin.hpp"

// Homogeneous models of CP^n (hermitian and symplectic realisations), HP^n
// and OP^2: reductive decompositions with orthonormal tangent bases, isotropy
// actions, auxiliary SO(r) actions and lifting-parity checks.

namespace spinr {

enum class SpaceId { CPnHermitian, CPnSymplectic, HPn, OP2 };

std::string space_name(SpaceId id);
std::string group_name(SpaceId id, int n);

struct MetricParams {
  double a = 0.5;  // overall scale of B0 on the horizontal part
  double t = 1.0;  // vertical scaling, symplectic model only
};

/// Aux rank r and twist count m of the configured spin^r structure.
struct SpinorConfig {
  int r = 0;  // 0 = natural rank of the space
  int m = 1;
};

struct ReductiveModel {
  SpaceId space;
  int n = 0;
  MetricParams params;
  int dim_m = 0;
  int r = 2;
  int m_twists = 1;
  int s = 0;  // aux parameter: winding for CP cases, 0/1 trivial/nontrivial
              // for HPn and OP2

  std::vector<QuatMatrix> h_basis;
  std::vector<QuatMatrix> m_basis;           // g-orthonormal
  std::vector<QuatMatrix> m_basis_unscaled;  // symplectic bracket bookkeeping

  // OP2 carries its isotropy directly as 16x16 matrices, indexed by the
  // abstract spin(9) basis pairs below; m_basis stays empty.
  std::vector<RealMat> op2_generators;
  std::vector<std::pair<int, int>> op2_pairs;

  int dim_h() const {
    return space == SpaceId::OP2 ? static_cast<int>(op2_generators.size())
                                 : static_cast<int>(h_basis.size());
  }
  bool has_matrix_model() const { return space != SpaceId::OP2; }

  /// Metric inner product of two Lie algebra elements (tangent part only).
  double g_inner(const QuatMatrix& x, const QuatMatrix& y) const;
  /// Coordinates over m_basis of the B0-orthogonal projection to m.
  Eigen::VectorXd m_coords(const QuatMatrix& x) const;
  /// Coordinates over h_basis of the B0-orthogonal projection to h.
  Eigen::VectorXd h_coords(const QuatMatrix& x) const;

  // cached B0 data, filled by build_model
  Eigen::LDLT<RealMat> h_gram_ldlt;
  Eigen::VectorXd m_b0_diag;
};

/// Natural aux rank: 2 for the CP realisations, 3 for HPn, 9 for OP2.
int natural_rank(SpaceId id);

/// Builds the model with the bases fixed above; validates the lifting parity
/// for the CP cases and the config shape. aux = s (CP), 0/1 (HPn, OP2).
ReductiveModel build_model(SpaceId id, int n, MetricParams params = {},
                           int aux = 0, SpinorConfig cfg = {});

/// Matrix of ad(X)|_m in the orthonormal basis, X given by h_basis index or
/// coefficients over h_basis. Skew-symmetric.
RealMat isotropy_matrix(const ReductiveModel& model, int h_index);
RealMat isotropy_matrix(const ReductiveModel& model,
                        const Eigen::VectorXd& h_coeffs);

SpinAlgebraElement isotropy_so(const ReductiveModel& model, int h_index);

/// Derivative of the auxiliary homomorphism as an r x r so(r) matrix, with
/// smaller natural blocks embedded in the lower right corner for structures
/// in a lineage.
RealMat aux_action(const ReductiveModel& model, int h_index);
RealMat aux_action(const ReductiveModel& model,
                   const Eigen::VectorXd& h_coeffs);

/// Lifting criterion for the CP realisations: winding numbers of the
/// isotropy and auxiliary images of the u(1) generator loop, compared per
/// the two-sheeted covering of SO(n) x SO(r). s = 0 queries the plain spin
/// case (trivial auxiliary).
bool lift_parity(SpaceId id, int n, int s);

/// dim_R of the commutant of the isotropy action inside End(m).
int isotropy_commutant_dim(const ReductiveModel& model,
                           const Tolerance& tol = {});

}  // namespace spinr
