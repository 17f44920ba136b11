#ifndef GEOFLOW_SOLITON_HPP
#define GEOFLOW_SOLITON_HPP

#include <vector>

#include "geoflow/curvature.hpp"
#include "geoflow/types.hpp"

namespace geoflow {

/// Flow tensor used for algebraic soliton classification.  XCF uses
/// T = +/-H (not +/-2H); the flow module integrates +/-2H and the factor 2
/// bridge is applied exactly once, in verify_self_similarity.  Ricci uses
/// T = -2 Rc, RG2Steady uses T = RG = -2 Rc - (alpha/2) Rm^2.
enum class FlowTensorTag { XCFPlusH, XCFMinusH, RG2Steady, Ricci };

struct FlowTensorKind {
  FlowTensorTag tag;
  double alpha = 0.0;  // RG2Steady coupling; ignored otherwise
};

enum class SolitonVerdict { Soliton, FixedPoint, None };
enum class SolitonClass { Expanding, Steady, Shrinking, NotApplicable };

/// Certified outcome of an algebraic soliton classification.
///   verdict == Soliton or FixedPoint  =>  D = That - kappa*Id is a
///   derivation within tolerance (residual is its raw max-norm violation);
///   FixedPoint additionally means T[g] ~ 0 entrywise.
/// class is Expanding/Steady/Shrinking by the sign of kappa; NotApplicable
/// marks non-steady algebraic RG-2 solutions, which exist algebraically
/// but generate no self-similar flow solution.
struct SolitonCertificate {
  FlowTensorKind kind;
  SolitonVerdict verdict;
  double kappa = 0.0;
  DiagOperator derivation;
  double residual = 0.0;
  SolitonClass soliton_class = SolitonClass::NotApplicable;
};

/// Lie derivative of g along the field generated by the one-parameter
/// group of the diagonal derivation D: components (d1 A, d2 B, d3 C).
DiagTensor lie_derivative_diag(const MilnorMetric& metric, const DiagOperator& D);

struct SolitonSolve {
  double kappa;
  DiagOperator derivation;  // That - kappa * Id
  double residual;          // max-norm of bracket-constraint violations
};

/// Finds the soliton constant for a diagonalized operator That: each
/// nonzero bracket [e_i,e_j] = c e_k imposes kappa = t_i + t_j - t_k, and
/// kappa is the least-squares solution over all constraints (their mean).
/// With no brackets (R3) any kappa works; the mean of the entries is the
/// canonical choice.
SolitonSolve solve_soliton_constant(GroupKind group, const DiagOperator& that);

enum class XcfDirection { Plus, Minus };

/// Classifies the metric as an algebraic soliton for T = +/-H.
SolitonCertificate classify_xcf(const MilnorMetric& metric, XcfDirection dir);

/// Classifies the metric as a *steady* algebraic soliton for T = RG(alpha)
/// (RG is natural but not homogeneous, so only kappa = 0 yields a
/// self-similar solution).  A non-steady algebraic soliton, when present,
/// is reported with class NotApplicable rather than suppressed.
SolitonCertificate classify_rg2_steady(const MilnorMetric& metric, double alpha);

/// Generic dispatcher over FlowTensorKind (Ricci classifies T = -2 Rc with
/// free kappa; alpha = 0 RG2 degenerates to the Ricci-flow tensor but is
/// still pinned to kappa = 0).
SolitonCertificate classify_flow_tensor(const MilnorMetric& metric,
                                        const FlowTensorKind& kind);

/// Closed-form steady RG-2 couplings of the metric: Heisenberg
/// {8BC/(3A)}; E(1,1) {2B} when A/C = 1, {3B/4} when A/C is 3 or 1/3;
/// SU(2) {-8A} when A=B=C, {-9A/2} when A = 4B/3 = 4C/3, {-6A} when
/// A = B = 3C/4 or A = C = 3B/4; empty otherwise.  Flat metrics (R3, E2
/// with A = B) are fixed points for every alpha, so no finite list exists
/// and the empty list is returned.
std::vector<double> rg2_steady_alphas(const MilnorMetric& metric);

/// Closed-form XCF prediction used to cross-check the generic solver.
struct XcfClosedForm {
  SolitonVerdict verdict;
  double kappa;  // meaningful when verdict != None
};
XcfClosedForm xcf_closed_form(const MilnorMetric& metric, XcfDirection dir);

struct GridSpec {
  double lo = 1.0;
  double hi = 1.0;
  int count = 1;
};

/// One sweep row.  kappa is the least-squares soliton constant (0 for
/// RG2Steady, whose residual is evaluated at kappa = 0) and residual is
/// scale-free: the raw max-norm violation divided by |That|_inf (0 when
/// the flow tensor vanishes identically).
struct SweepRow {
  double A, B, C;
  double kappa;
  double residual;
};

/// Residual table over a component grid, row order lexicographic in the
/// (A, B, C) grid indices.  Supports the classification theorems
/// numerically: residual ~ 0 exactly on the theorem locus and bounded
/// away from 0 elsewhere.
std::vector<SweepRow> sweep_residuals(GroupKind group, const FlowTensorKind& kind,
                                      const GridSpec& grid_a,
                                      const GridSpec& grid_b,
                                      const GridSpec& grid_c);

std::vector<double> grid_points(const GridSpec& grid);

}  // namespace geoflow

#endif
