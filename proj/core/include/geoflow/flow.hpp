#ifndef GEOFLOW_FLOW_HPP
#define GEOFLOW_FLOW_HPP

#include <optional>
#include <vector>

#include "geoflow/soliton.hpp"
#include "geoflow/types.hpp"

namespace geoflow {

/// Geometric evolution equations integrated by this module, with the
/// right-hand-side conventions
///   Ricci:  dg/dt = -2 Rc[g]
///   XCF+- : dg/dt = +/-2 H[g]
///   RG2   : dg/dt = -2 Rc[g] - (alpha/2) Rm^2[g].
/// Note the XCF flow tensor is twice the +/-H used for classification.
enum class FlowKindTag { Ricci, XCFPlus, XCFMinus, RG2 };

struct FlowKind {
  FlowKindTag tag;
  double alpha = 0.0;  // RG2 coupling; ignored otherwise
};

/// Covariant components (dA/dt, dB/dt, dC/dt) of the chosen flow tensor.
/// Every tensor involved is diagonal in the Milnor frame, so the flow
/// preserves diagonality and reduces to these three ODEs.
std::array<double, 3> flow_rhs(const FlowKind& kind, const MilnorMetric& metric);

enum class IntegrationMethod { RK45, RK4Fixed };

struct IntegratorControls {
  IntegrationMethod method = IntegrationMethod::RK45;
  double t_end = 1.0;
  double initial_step = 1e-3;
  double fixed_step = 1e-3;  // RK4Fixed only
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double blowup_ceiling = 1e8;
  double collapse_floor = 1e-8;
  std::optional<double> sample_dt;  // record only at multiples of this
  long max_steps = 2'000'000;
};

enum class Termination {
  ReachedTEnd,
  ComponentCollapse,
  ComponentBlowup,
  StepFailure
};

const char* termination_name(Termination t);

struct TrajectorySample {
  double t;
  std::array<double, 3> g;
};

/// Time-stamped metric components from a flow integration.  Sample times
/// are strictly increasing and all sampled components positive; the
/// termination reason is data, not an error.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::ReachedTEnd;
};

Trajectory integrate(const FlowKind& kind, const MilnorMetric& g0,
                     const IntegratorControls& controls);

/// Thrown when a scaling profile is evaluated at or past the time where
/// it reaches zero.
class singular_time_error : public std::domain_error {
 public:
  explicit singular_time_error(double t_star)
      : std::domain_error("scaling profile hits zero at t* = " +
                          std::to_string(t_star)),
        t_star_(t_star) {}
  double singular_time() const { return t_star_; }

 private:
  double t_star_;
};

/// Solution of dc/dt = kappa c^q, c(0) = 1:
///   c(t) = (1 + (1-q) kappa t)^(1/(1-q))  for q != 1,
///   c(t) = exp(kappa t)                   for q = 1.
double scaling_profile(double kappa, double q, double t);

/// Warped time s(t) = integral_0^t c(u)^(q-1) du; in closed form
/// s(t) = log1p((1-q) kappa t) / ((1-q) kappa) for q != 1, kappa != 0,
/// and s(t) = t otherwise.
double scaling_time_warp(double kappa, double q, double t);

/// Self-similar trajectory data for a certified algebraic soliton, in the
/// *flow* normalization: component i evolves as
///   g_ii(t) = c(t) exp(d_i s(t)) g_ii(0).
struct SelfSimilarModel {
  double kappa;       // soliton constant of the flow tensor
  double degree;      // homogeneity degree q of the flow tensor
  DiagOperator derivation;
  MilnorMetric base;
};

MilnorMetric self_similar_predict(const SelfSimilarModel& model, double t);

/// Builds the model for a certificate produced by the soliton module,
/// rescaling (kappa, D) from the classification normalization (+/-H) to
/// the flow normalization (+/-2H) by the factor 2 for XCF; Ricci and
/// steady RG-2 certificates carry the flow tensor already.  Requires a
/// certified (Soliton or FixedPoint) verdict, and class Steady for RG-2.
SelfSimilarModel self_similar_model(const FlowKind& kind,
                                    const SolitonCertificate& certificate,
                                    const MilnorMetric& g0);

/// Integrates the flow from g0 and returns the maximum relative deviation
/// of the sampled components from the self-similar prediction.
double verify_self_similarity(const FlowKind& kind,
                              const SolitonCertificate& certificate,
                              const MilnorMetric& g0, double horizon,
                              const IntegratorControls& controls = {});

}  // namespace geoflow

#endif
