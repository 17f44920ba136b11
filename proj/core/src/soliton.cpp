#include "geoflow/soliton.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/algebra.hpp"

namespace geoflow {

namespace {

double derivation_residual(GroupKind group, const DiagOperator& D) {
  return is_diagonal_derivation(group, D, 0.0).residual;
}

DiagTensor flow_tensor_for_kind(const MilnorMetric& m, const FlowTensorKind& kind) {
  switch (kind.tag) {
    case FlowTensorTag::XCFPlusH:
      return cross_curvature(m);
    case FlowTensorTag::XCFMinusH: {
      DiagTensor t = cross_curvature(m);
      for (double& x : t.v) x = -x;
      return t;
    }
    case FlowTensorTag::RG2Steady:
      return rg2_tensor(m, kind.alpha);
    case FlowTensorTag::Ricci: {
      DiagTensor t = ricci(m);
      for (double& x : t.v) x = -2.0 * x;
      return t;
    }
  }
  throw std::logic_error("flow_tensor_for_kind: bad tag");
}

// Intrinsic magnitude of the flow operator for fixed-point detection:
// XCF operator entries are products of two sectional curvatures, Ricci
// entries sums of two, RG entries a mix weighted by alpha.
double operator_scale(const FlowTensorKind& kind, double kmax) {
  switch (kind.tag) {
    case FlowTensorTag::XCFPlusH:
    case FlowTensorTag::XCFMinusH:
      return kmax * kmax;
    case FlowTensorTag::Ricci:
      return 4.0 * kmax;
    case FlowTensorTag::RG2Steady:
      return 4.0 * kmax + std::abs(kind.alpha) * kmax * kmax;
  }
  return 0.0;
}

SolitonCertificate classify_generic(const MilnorMetric& m,
                                    const FlowTensorKind& kind) {
  const DiagTensor T = flow_tensor_for_kind(m, kind);
  const DiagOperator that = raise_to_operator(T, m);

  const auto K = sectional_curvatures(m);
  const double kmax = std::max({std::abs(K[0]), std::abs(K[1]), std::abs(K[2])});
  const bool tensor_vanishes =
      kmax == 0.0 || that.max_abs() <= 1e-12 * operator_scale(kind, kmax);

  // scale-relative thresholds: closed-form arithmetic leaves residuals at
  // rounding level on the theorem loci, and a relative test keeps the
  // verdict invariant under metric scaling
  const double tol = 1e-9 * that.max_abs();
  const double kappa_zero_tol = 1e-12 * that.max_abs();

  SolitonCertificate cert;
  cert.kind = kind;

  if (tensor_vanishes) {
    // the flow tensor is zero (up to rounding): a fixed point.  The
    // residual test below would be meaningless here, since both the
    // operator and its residual sit at noise level.
    cert.verdict = SolitonVerdict::FixedPoint;
    cert.kappa = 0.0;
    cert.derivation = that;
    cert.residual = derivation_residual(m.group, that);
    cert.soliton_class = SolitonClass::Steady;
    return cert;
  }

  if (kind.tag == FlowTensorTag::RG2Steady) {
    // only kappa = 0 generates a self-similar solution (RG is not homogeneous)
    const double res0 = derivation_residual(m.group, that);
    if (res0 <= tol) {
      cert.verdict = SolitonVerdict::Soliton;
      cert.kappa = 0.0;
      cert.derivation = that;
      cert.residual = res0;
      cert.soliton_class = SolitonClass::Steady;
      return cert;
    }
    const SolitonSolve s = solve_soliton_constant(m.group, that);
    if (s.residual <= tol && std::abs(s.kappa) > tol) {
      // algebraic soliton, but non-steady: no self-similar solution
      cert.verdict = SolitonVerdict::Soliton;
      cert.kappa = s.kappa;
      cert.derivation = s.derivation;
      cert.residual = s.residual;
      cert.soliton_class = SolitonClass::NotApplicable;
      return cert;
    }
    cert.verdict = SolitonVerdict::None;
    cert.kappa = 0.0;
    cert.derivation = that;
    cert.residual = res0;
    cert.soliton_class = SolitonClass::NotApplicable;
    return cert;
  }

  const SolitonSolve s = solve_soliton_constant(m.group, that);
  cert.kappa = s.kappa;
  cert.derivation = s.derivation;
  cert.residual = s.residual;
  if (s.residual <= tol) {
    cert.verdict = SolitonVerdict::Soliton;
    if (std::abs(s.kappa) <= kappa_zero_tol)
      cert.soliton_class = SolitonClass::Steady;
    else
      cert.soliton_class = s.kappa > 0.0 ? SolitonClass::Expanding
                                         : SolitonClass::Shrinking;
  } else {
    cert.verdict = SolitonVerdict::None;
    cert.soliton_class = SolitonClass::NotApplicable;
  }
  return cert;
}

}  // namespace

DiagTensor lie_derivative_diag(const MilnorMetric& metric, const DiagOperator& D) {
  return {{D.d[0] * metric.A(), D.d[1] * metric.B(), D.d[2] * metric.C()},
          Variance::Covariant02};
}

SolitonSolve solve_soliton_constant(GroupKind group, const DiagOperator& that) {
  const auto rels = nonzero_brackets(group);
  const auto& t = that.d;
  double kappa;
  if (rels.empty()) {
    kappa = (t[0] + t[1] + t[2]) / 3.0;  // any kappa works; fix the mean
  } else {
    double sum = 0.0;
    for (const auto& r : rels)
      sum += t[r.i - 1] + t[r.j - 1] - t[r.k - 1];
    kappa = sum / static_cast<double>(rels.size());
  }
  DiagOperator D{{t[0] - kappa, t[1] - kappa, t[2] - kappa}};
  return {kappa, D, derivation_residual(group, D)};
}

SolitonCertificate classify_xcf(const MilnorMetric& metric, XcfDirection dir) {
  const FlowTensorKind kind{dir == XcfDirection::Plus ? FlowTensorTag::XCFPlusH
                                                      : FlowTensorTag::XCFMinusH};
  return classify_generic(metric, kind);
}

SolitonCertificate classify_rg2_steady(const MilnorMetric& metric, double alpha) {
  return classify_generic(metric, FlowTensorKind{FlowTensorTag::RG2Steady, alpha});
}

SolitonCertificate classify_flow_tensor(const MilnorMetric& metric,
                                        const FlowTensorKind& kind) {
  return classify_generic(metric, kind);
}

XcfClosedForm xcf_closed_form(const MilnorMetric& metric, XcfDirection dir) {
  const double sign = dir == XcfDirection::Plus ? 1.0 : -1.0;
  const double A = metric.A(), B = metric.B(), C = metric.C();
  const double rel = 1e-9;
  auto close = [&](double x, double y) {
    return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
  };
  switch (metric.group) {
    case GroupKind::R3:
      return {SolitonVerdict::FixedPoint, 0.0};
    case GroupKind::Heisenberg: {
      const double u = A / (B * C);
      return {SolitonVerdict::Soliton, -sign * (7.0 / 16.0) * u * u};
    }
    case GroupKind::E2:
      return close(B / A, 1.0) ? XcfClosedForm{SolitonVerdict::FixedPoint, 0.0}
                               : XcfClosedForm{SolitonVerdict::None, 0.0};
    case GroupKind::E11: {
      if (!close(A / C, 1.0)) return {SolitonVerdict::None, 0.0};
      return {SolitonVerdict::Soliton, sign / (B * B)};
    }
    case GroupKind::SL2tilde:
      return {SolitonVerdict::None, 0.0};
    case GroupKind::SU2: {
      if (!(close(A / B, 1.0) && close(B / C, 1.0)))
        return {SolitonVerdict::None, 0.0};
      return {SolitonVerdict::Soliton, sign / (16.0 * A * A)};
    }
  }
  throw std::logic_error("xcf_closed_form: bad group");
}

std::vector<double> rg2_steady_alphas(const MilnorMetric& metric) {
  const double A = metric.A(), B = metric.B(), C = metric.C();
  const double rel = 1e-9;
  auto close = [&](double x, double y) {
    return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
  };
  switch (metric.group) {
    case GroupKind::R3:
    case GroupKind::E2:
    case GroupKind::SL2tilde:
      // R3 and flat E2 metrics are fixed points for every alpha; there is
      // no finite list to return.  Non-flat E2 and SL2tilde admit none.
      return {};
    case GroupKind::Heisenberg:
      return {8.0 * B * C / (3.0 * A)};
    case GroupKind::E11: {
      const double a = A / C;
      if (close(a, 1.0)) return {2.0 * B};
      if (close(a, 3.0) || close(a, 1.0 / 3.0)) return {0.75 * B};
      return {};
    }
    case GroupKind::SU2: {
      if (close(A, B) && close(B, C)) return {-8.0 * A};
      if (close(A, 4.0 * B / 3.0) && close(B, C)) return {-4.5 * A};
      if (close(A, B) && close(C, 4.0 * A / 3.0)) return {-6.0 * A};
      if (close(A, C) && close(B, 4.0 * A / 3.0)) return {-6.0 * A};
      return {};
    }
  }
  throw std::logic_error("rg2_steady_alphas: bad group");
}

std::vector<double> grid_points(const GridSpec& grid) {
  if (grid.count < 0)
    throw std::invalid_argument("grid_points: count must be >= 0");
  if (grid.count == 0) return {};
  if (!(grid.lo > 0.0) || !(grid.hi > 0.0))
    throw std::invalid_argument("grid_points: bounds must be positive");
  if (grid.count == 1) return {grid.lo};
  std::vector<double> pts(grid.count);
  const double step = (grid.hi - grid.lo) / static_cast<double>(grid.count - 1);
  for (int i = 0; i < grid.count; ++i)
    pts[i] = grid.lo + step * static_cast<double>(i);
  return pts;
}

std::vector<SweepRow> sweep_residuals(GroupKind group, const FlowTensorKind& kind,
                                      const GridSpec& grid_a,
                                      const GridSpec& grid_b,
                                      const GridSpec& grid_c) {
  const auto as = grid_points(grid_a);
  const auto bs = grid_points(grid_b);
  const auto cs = grid_points(grid_c);
  std::vector<SweepRow> rows;
  rows.reserve(as.size() * bs.size() * cs.size());
  for (double a : as) {
    for (double b : bs) {
      for (double c : cs) {
        const MilnorMetric m(group, a, b, c);
        const DiagTensor T = flow_tensor_for_kind(m, kind);
        const DiagOperator that = raise_to_operator(T, m);
        double kappa, raw;
        if (kind.tag == FlowTensorTag::RG2Steady) {
          kappa = 0.0;
          raw = derivation_residual(group, that);
        } else {
          const SolitonSolve s = solve_soliton_constant(group, that);
          kappa = s.kappa;
          raw = s.residual;
        }
        const double scale = that.max_abs();
        const double rel = scale > 0.0 ? raw / scale : 0.0;
        rows.push_back({a, b, c, kappa, rel});
      }
    }
  }
  return rows;
}

}  // namespace geoflow
