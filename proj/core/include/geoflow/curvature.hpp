#ifndef GEOFLOW_CURVATURE_HPP
#define GEOFLOW_CURVATURE_HPP

#include <optional>

#include "geoflow/types.hpp"

namespace geoflow {

/// Rescaled structure constants of the metric's orthonormalized Milnor
/// frame and the associated connection coefficients:
///   lt1 = sqrt(A/(BC)) l1,  lt2 = sqrt(B/(CA)) l2,  lt3 = sqrt(C/(AB)) l3,
///   mt_i = (lt1 + lt2 + lt3)/2 - lt_i.
/// (The symmetric form of lt3 is used; the asymmetric variant fails to
/// reproduce the per-group curvature specializations.)
struct TildeConstants {
  std::array<double, 3> lambda_tilde;
  std::array<double, 3> mu_tilde;
};
TildeConstants tilde_constants(const MilnorMetric& metric);

/// Connection coefficients mt_i of the rescaled orthonormal frame; these
/// determine all covariant derivatives (nabla_{e1} e2 = mt1 e3, etc).
std::array<double, 3> connection_coefficients(const MilnorMetric& metric);

/// Principal sectional curvatures K_l = lt_l mt_l - mt_m mt_n of the
/// coordinate 2-planes, (l,m,n) a cyclic permutation of (1,2,3).
std::array<double, 3> sectional_curvatures(const MilnorMetric& metric);

/// Ricci tensor, diagonal in the Milnor frame:
/// (A(K2+K3), B(K1+K3), C(K1+K2)).
DiagTensor ricci(const MilnorMetric& metric);

/// Scalar curvature 2(K1 + K2 + K3).
double scalar_curvature(const MilnorMetric& metric);

enum class Sign : int { Neg = -1, Zero = 0, Pos = 1 };

/// Signs of the Ricci diagonal, sorted descending (+ before 0 before -).
/// Entries with |R_ll| <= tol count as zero.
std::array<Sign, 3> ricci_signature(const MilnorMetric& metric, double tol);
std::array<Sign, 3> ricci_signature(const MilnorMetric& metric);

/// Quadratic curvature tensor Rm^2 with diagonal components
/// (2A(K2^2+K3^2), 2B(K3^2+K1^2), 2C(K1^2+K2^2)).
DiagTensor rm_squared(const MilnorMetric& metric);

/// Cross curvature tensor H, diagonal components (A K2 K3, B K3 K1, C K1 K2).
DiagTensor cross_curvature(const MilnorMetric& metric);

/// Cross curvature via the raised Einstein tensor: P = (Rc - (R/2)g) with
/// both indices raised, H = (det P / det g^-1) P^-1.  Returns nullopt when
/// P is singular (some K_l ~ 0); the principal-curvature product formula
/// remains valid there and callers fall back to cross_curvature().
std::optional<DiagTensor> cross_curvature_via_einstein(const MilnorMetric& metric);

/// RG-2 flow tensor RG = -2 Rc - (alpha/2) Rm^2 (computed as exactly this
/// composition, so the identity with the Ricci and Rm^2 routines is one of
/// implementations).
DiagTensor rg2_tensor(const MilnorMetric& metric, double alpha);

/// Raises one index with the metric: operator entries (T1/A, T2/B, T3/C).
/// Throws std::invalid_argument if T is already an operator.
DiagTensor raise_index(const DiagTensor& tensor, const MilnorMetric& metric);
DiagOperator raise_to_operator(const DiagTensor& tensor, const MilnorMetric& metric);

/// Metric scaled by c > 0 (componentwise).
MilnorMetric scale_metric(const MilnorMetric& metric, double c);

/// All Milnor-frame curvature data of a metric in one place.
struct CurvatureReport {
  std::array<double, 3> lambda_tilde;
  std::array<double, 3> mu_tilde;
  std::array<double, 3> sectional;
  DiagTensor ricci;
  double scalar;
  DiagTensor rm2;
  DiagTensor cross;
  std::optional<DiagTensor> rg2;  // present iff alpha was supplied
};
CurvatureReport curvature_report(const MilnorMetric& metric,
                                 std::optional<double> alpha = std::nullopt);

}  // namespace geoflow

#endif
