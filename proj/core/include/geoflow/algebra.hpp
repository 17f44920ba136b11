#ifndef GEOFLOW_ALGEBRA_HPP
#define GEOFLOW_ALGEBRA_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geoflow/types.hpp"

namespace geoflow {

/// Structure-constant signature of a group, ordered l1 >= l2 >= l3.
StructureConstants structure_of(GroupKind group);

/// Result of bracket(): [e_i, e_j] = coeff * e_k.  coeff == 0 encodes the
/// zero bracket, in which case k == 0.
struct Bracket {
  int coeff;
  int k;  // 1-based frame index, 0 when the bracket vanishes
};

/// Lie bracket of frame vectors, 1-based indices i, j in {1,2,3}.
/// Antisymmetric: bracket(g, j, i) negates the coefficient.
Bracket bracket(GroupKind group, int i, int j);

/// One nonzero bracket relation [e_i, e_j] = coeff * e_k with i < j.
struct BracketRelation {
  int i, j, k;  // 1-based
  int coeff;
};

/// The nonzero bracket relations of the group's Milnor basis (i < j).
std::span<const BracketRelation> nonzero_brackets(GroupKind group);

struct DerivationCheck {
  bool verdict;
  double residual;  // max over nonzero brackets of |d_i + d_j - d_k|
};

/// Tests whether the diagonal operator D is a derivation of the Lie
/// algebra.  Each nonzero bracket [e_i,e_j] = c e_k demands that e_k be an
/// eigenvector with eigenvalue d_i + d_j; the residual is the max-norm of
/// the violations.
DerivationCheck is_diagonal_derivation(GroupKind group, const DiagOperator& D,
                                       double tol);

/// Default derivation tolerance: 1e-9 in absolute terms after normalizing
/// the operator by max(1, |d|_inf).
double default_derivation_tol(const DiagOperator& D);

/// Both nice-basis conditions on the Milnor structure constants.  True for
/// all six groups; kept as a regression guard.
bool is_nice_basis(GroupKind group);

struct NormalizedMetric {
  MilnorMetric metric;
  std::array<double, 3> scalings;  // componentwise multipliers applied
};

/// Rescales the Milnor basis by an automorphism to put the metric in the
/// per-group normal form: Heisenberg -> B=C=1, E2 -> A=1, E11 -> C=1,
/// R3 -> (1,1,1); SL2tilde and SU2 are unchanged.  The result is isometric
/// to the input, so every curvature-derived classification agrees before
/// and after.
NormalizedMetric normalize_metric(const MilnorMetric& metric);

/// Canonical representative of an E(1,1) metric: normal form C=1 with
/// A >= 1, using the automorphism e1 -> sqrt(k) e3, e2 -> e2,
/// e3 -> sqrt(k) e1 that swaps the first and third frame directions
/// ((A,B,1) and (1/A,B,1) are isometric).  Idempotent.
MilnorMetric e11_canonical_form(const MilnorMetric& metric);

/// Case-insensitive group name parsing; accepts r3, heisenberg (alias
/// nil3), e2, e11 (alias sol), sl2 (alias sl2tilde), su2.
std::optional<GroupKind> parse_group(std::string_view name);

}  // namespace geoflow

#endif
