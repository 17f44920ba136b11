#include "geoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoflow/curvature.hpp"

namespace geoflow {

namespace {

// Dormand-Prince 5(4) tableau.  The last stage row doubles as the 5th
// order weights (FSAL); e[] are the weights of the embedded error term.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using State = std::array<double, 3>;

bool positive_finite(const State& y) {
  for (double x : y)
    if (!(x > 0.0) || !std::isfinite(x)) return false;
  return true;
}

// RHS without MilnorMetric validation overhead; returns false when the
// state has left the positive cone (the step must then be rejected).
bool rhs_raw(const FlowKind& kind, GroupKind group, const State& y, State& dy) {
  if (!positive_finite(y)) return false;
  const MilnorMetric m(group, y);
  dy = flow_rhs(kind, m);
  return std::isfinite(dy[0]) && std::isfinite(dy[1]) && std::isfinite(dy[2]);
}

State axpy(const State& y, double h, const State& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

struct StepResult {
  bool ok = false;        // stages all evaluable and result positive
  State y_next{};
  double error_ratio = std::numeric_limits<double>::infinity();
};

StepResult dopri_step(const FlowKind& kind, GroupKind group, const State& y,
                      double h, double atol, double rtol) {
  StepResult out;
  State k1, k2, k3, k4, k5, k6, k7;
  if (!rhs_raw(kind, group, y, k1)) return out;
  State s = axpy(y, h * a21, k1);
  if (!rhs_raw(kind, group, s, k2)) return out;
  s = {y[0] + h * (a31 * k1[0] + a32 * k2[0]),
       y[1] + h * (a31 * k1[1] + a32 * k2[1]),
       y[2] + h * (a31 * k1[2] + a32 * k2[2])};
  if (!rhs_raw(kind, group, s, k3)) return out;
  for (int i = 0; i < 3; ++i)
    s[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  if (!rhs_raw(kind, group, s, k4)) return out;
  for (int i = 0; i < 3; ++i)
    s[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  if (!rhs_raw(kind, group, s, k5)) return out;
  for (int i = 0; i < 3; ++i)
    s[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                       a65 * k5[i]);
  if (!rhs_raw(kind, group, s, k6)) return out;
  State y5;
  for (int i = 0; i < 3; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                        b6 * k6[i]);
  if (!positive_finite(y5)) return out;
  if (!rhs_raw(kind, group, y5, k7)) return out;

  double ratio = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                            e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    ratio = std::max(ratio, std::abs(err) / scale);
  }
  out.ok = true;
  out.y_next = y5;
  out.error_ratio = ratio;
  return out;
}

bool rk4_step(const FlowKind& kind, GroupKind group, const State& y, double h,
              State& y_next) {
  State k1, k2, k3, k4;
  if (!rhs_raw(kind, group, y, k1)) return false;
  if (!rhs_raw(kind, group, axpy(y, 0.5 * h, k1), k2)) return false;
  if (!rhs_raw(kind, group, axpy(y, 0.5 * h, k2), k3)) return false;
  if (!rhs_raw(kind, group, axpy(y, h, k3), k4)) return false;
  for (int i = 0; i < 3; ++i)
    y_next[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return positive_finite(y_next);
}

void validate_controls(const IntegratorControls& c, const MilnorMetric& g0) {
  if (!(c.t_end > 0.0))
    throw std::invalid_argument("IntegratorControls: t_end must be positive");
  if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0))
    throw std::invalid_argument("IntegratorControls: tolerances must be positive");
  if (!(c.initial_step > 0.0) || !(c.fixed_step > 0.0))
    throw std::invalid_argument("IntegratorControls: steps must be positive");
  if (c.sample_dt && !(*c.sample_dt > 0.0))
    throw std::invalid_argument("IntegratorControls: sample_dt must be positive");
  const double gmin = std::min({g0.A(), g0.B(), g0.C()});
  const double gmax = std::max({g0.A(), g0.B(), g0.C()});
  if (!(c.collapse_floor < gmin) || !(gmax < c.blowup_ceiling))
    throw std::invalid_argument(
        "IntegratorControls: initial components must lie strictly between "
        "collapse_floor and blowup_ceiling");
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "reached_t_end";
    case Termination::ComponentCollapse: return "component_collapse";
    case Termination::ComponentBlowup: return "component_blowup";
    case Termination::StepFailure: return "step_failure";
  }
  return "?";
}

std::array<double, 3> flow_rhs(const FlowKind& kind, const MilnorMetric& metric) {
  switch (kind.tag) {
    case FlowKindTag::Ricci: {
      const DiagTensor rc = ricci(metric);
      return {-2.0 * rc.v[0], -2.0 * rc.v[1], -2.0 * rc.v[2]};
    }
    case FlowKindTag::XCFPlus: {
      const DiagTensor h = cross_curvature(metric);
      return {2.0 * h.v[0], 2.0 * h.v[1], 2.0 * h.v[2]};
    }
    case FlowKindTag::XCFMinus: {
      const DiagTensor h = cross_curvature(metric);
      return {-2.0 * h.v[0], -2.0 * h.v[1], -2.0 * h.v[2]};
    }
    case FlowKindTag::RG2: {
      const DiagTensor rg = rg2_tensor(metric, kind.alpha);
      return rg.v;
    }
  }
  throw std::logic_error("flow_rhs: bad tag");
}

Trajectory integrate(const FlowKind& kind, const MilnorMetric& g0,
                     const IntegratorControls& controls) {
  validate_controls(controls, g0);
  const GroupKind group = g0.group;

  Trajectory traj;
  State y = g0.g;
  double t = 0.0;
  double t_comp = 0.0;  // Kahan compensation: rounding bias in t += h is
                        // amplified near power-law singular times
  auto advance_time = [&](double h) {
    const double yk = h - t_comp;
    const double tk = t + yk;
    t_comp = (tk - t) - yk;
    t = tk;
  };
  long next_sample_index = 1;

  auto at_target = [](double tv, double target) {
    return tv >= target - 1e-12 * std::max(1.0, std::abs(target));
  };
  auto next_sample_time = [&]() {
    return static_cast<double>(next_sample_index) * *controls.sample_dt;
  };
  // next time the step must land on exactly
  auto step_cap = [&]() -> double {
    double cap = controls.t_end;
    if (controls.sample_dt) cap = std::min(cap, next_sample_time());
    return cap - t;
  };
  auto record = [&](double tv, const State& yv) {
    if (!traj.samples.empty() && !(traj.samples.back().t < tv)) return;
    traj.samples.push_back({tv, yv});
  };
  // records per accepted step, or only on the sample lattice when
  // sample_dt is set; returns whether the point was recorded
  auto record_step = [&]() {
    bool rec = false;
    if (!controls.sample_dt) {
      record(t, y);
      rec = true;
    } else if (at_target(t, next_sample_time()) || at_target(t, controls.t_end)) {
      record(t, y);
      rec = true;
      while (at_target(t, next_sample_time())) ++next_sample_index;
    }
    return rec;
  };
  auto check_bounds = [&](const State& yv) -> std::optional<Termination> {
    for (double x : yv) {
      if (x <= controls.collapse_floor) return Termination::ComponentCollapse;
      if (x >= controls.blowup_ceiling) return Termination::ComponentBlowup;
    }
    return std::nullopt;
  };

  record(0.0, y);

  if (controls.method == IntegrationMethod::RK4Fixed) {
    long steps = 0;
    while (!at_target(t, controls.t_end)) {
      const double h = std::min(controls.fixed_step, step_cap());
      State y_next;
      if (!(t + h > t) || !rk4_step(kind, group, y, h, y_next) ||
          ++steps > controls.max_steps) {
        traj.termination = Termination::StepFailure;
        return traj;
      }
      advance_time(h);
      y = y_next;
      const bool recorded = record_step();
      if (auto term = check_bounds(y)) {
        if (!recorded) record(t, y);
        traj.termination = *term;
        return traj;
      }
    }
    record(t, y);
    traj.termination = Termination::ReachedTEnd;
    return traj;
  }

  // adaptive Dormand-Prince 5(4)
  double h = std::min(controls.initial_step, controls.t_end);
  long steps = 0;
  while (!at_target(t, controls.t_end)) {
    if (++steps > controls.max_steps) {
      traj.termination = Termination::StepFailure;
      return traj;
    }
    const double h_try = std::min(h, step_cap());
    if (!(t + h_try > t)) {  // step no longer advances time
      traj.termination = Termination::StepFailure;
      return traj;
    }
    const StepResult r = dopri_step(kind, group, y, h_try, controls.abs_tol,
                                    controls.rel_tol);
    if (!r.ok) {
      h = 0.5 * h_try;
      continue;
    }
    if (r.error_ratio <= 1.0) {
      advance_time(h_try);
      y = r.y_next;
      const bool recorded = record_step();
      if (auto term = check_bounds(y)) {
        if (!recorded) record(t, y);
        traj.termination = *term;
        return traj;
      }
      const double grow =
          r.error_ratio == 0.0
              ? 5.0
              : std::clamp(0.9 * std::pow(r.error_ratio, -0.2), 0.2, 5.0);
      h = h_try * grow;
    } else {
      h = h_try * std::clamp(0.9 * std::pow(r.error_ratio, -0.2), 0.2, 0.9);
    }
  }
  record(t, y);
  traj.termination = Termination::ReachedTEnd;
  return traj;
}

double scaling_profile(double kappa, double q, double t) {
  if (kappa == 0.0) return 1.0;
  if (q == 1.0) return std::exp(kappa * t);
  const double x = (1.0 - q) * kappa * t;
  if (1.0 + x <= 0.0) throw singular_time_error(-1.0 / ((1.0 - q) * kappa));
  return std::exp(std::log1p(x) / (1.0 - q));
}

double scaling_time_warp(double kappa, double q, double t) {
  if (kappa == 0.0 || q == 1.0) return t;
  const double x = (1.0 - q) * kappa * t;
  if (1.0 + x <= 0.0) throw singular_time_error(-1.0 / ((1.0 - q) * kappa));
  return std::log1p(x) / ((1.0 - q) * kappa);
}

MilnorMetric self_similar_predict(const SelfSimilarModel& model, double t) {
  const double c = scaling_profile(model.kappa, model.degree, t);
  const double s = scaling_time_warp(model.kappa, model.degree, t);
  std::array<double, 3> comps;
  for (int i = 0; i < 3; ++i)
    comps[i] = c * std::exp(model.derivation.d[i] * s) * model.base.g[i];
  return MilnorMetric(model.base.group, comps);
}

SelfSimilarModel self_similar_model(const FlowKind& kind,
                                    const SolitonCertificate& certificate,
                                    const MilnorMetric& g0) {
  if (certificate.verdict == SolitonVerdict::None)
    throw std::invalid_argument(
        "self_similar_model: certificate does not certify a soliton");
  switch (kind.tag) {
    case FlowKindTag::XCFPlus:
    case FlowKindTag::XCFMinus: {
      // classification used +/-H, the flow runs +/-2H
      DiagOperator d = certificate.derivation;
      for (double& x : d.d) x *= 2.0;
      return {2.0 * certificate.kappa, -1.0, d, g0};
    }
    case FlowKindTag::Ricci:
      return {certificate.kappa, 0.0, certificate.derivation, g0};
    case FlowKindTag::RG2: {
      if (certificate.soliton_class != SolitonClass::Steady)
        throw std::invalid_argument(
            "self_similar_model: only steady RG-2 solitons evolve "
            "self-similarly");
      return {0.0, 0.0, certificate.derivation, g0};
    }
  }
  throw std::logic_error("self_similar_model: bad tag");
}

double verify_self_similarity(const FlowKind& kind,
                              const SolitonCertificate& certificate,
                              const MilnorMetric& g0, double horizon,
                              const IntegratorControls& controls) {
  const SelfSimilarModel model = self_similar_model(kind, certificate, g0);
  IntegratorControls c = controls;
  c.t_end = horizon;
  const Trajectory traj = integrate(kind, g0, c);
  double dev = 0.0;
  for (const auto& sample : traj.samples) {
    const MilnorMetric pred = self_similar_predict(model, sample.t);
    for (int i = 0; i < 3; ++i)
      dev = std::max(dev,
                     std::abs(sample.g[i] - pred.g[i]) / std::abs(pred.g[i]));
  }
  return dev;
}

}  // namespace geoflow
