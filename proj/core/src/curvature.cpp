#include "geoflow/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/algebra.hpp"

namespace geoflow {

TildeConstants tilde_constants(const MilnorMetric& metric) {
  const auto lam = structure_of(metric.group).lambdas;
  const double A = metric.A(), B = metric.B(), C = metric.C();
  TildeConstants tc;
  tc.lambda_tilde = {std::sqrt(A / (B * C)) * lam[0],
                     std::sqrt(B / (C * A)) * lam[1],
                     std::sqrt(C / (A * B)) * lam[2]};
  const auto& lt = tc.lambda_tilde;
  const double half_sum = 0.5 * (lt[0] + lt[1] + lt[2]);
  tc.mu_tilde = {half_sum - lt[0], half_sum - lt[1], half_sum - lt[2]};
  return tc;
}

std::array<double, 3> connection_coefficients(const MilnorMetric& metric) {
  return tilde_constants(metric).mu_tilde;
}

std::array<double, 3> sectional_curvatures(const MilnorMetric& metric) {
  const auto [lt, mt] = tilde_constants(metric);
  return {lt[0] * mt[0] - mt[1] * mt[2],
          lt[1] * mt[1] - mt[2] * mt[0],
          lt[2] * mt[2] - mt[0] * mt[1]};
}

DiagTensor ricci(const MilnorMetric& metric) {
  const auto K = sectional_curvatures(metric);
  return {{metric.A() * (K[1] + K[2]),
           metric.B() * (K[0] + K[2]),
           metric.C() * (K[0] + K[1])},
          Variance::Covariant02};
}

double scalar_curvature(const MilnorMetric& metric) {
  const auto K = sectional_curvatures(metric);
  return 2.0 * (K[0] + K[1] + K[2]);
}

std::array<Sign, 3> ricci_signature(const MilnorMetric& metric, double tol) {
  if (!(tol >= 0.0))
    throw std::invalid_argument("ricci_signature: tol must be >= 0");
  const auto rc = ricci(metric);
  std::array<Sign, 3> s;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(rc.v[i]) <= tol)
      s[i] = Sign::Zero;
    else
      s[i] = rc.v[i] > 0.0 ? Sign::Pos : Sign::Neg;
  }
  std::sort(s.begin(), s.end(),
            [](Sign a, Sign b) { return static_cast<int>(a) > static_cast<int>(b); });
  return s;
}

std::array<Sign, 3> ricci_signature(const MilnorMetric& metric) {
  const double scale = ricci(metric).max_abs();
  return ricci_signature(metric, 1e-12 * std::max(1.0, scale));
}

DiagTensor rm_squared(const MilnorMetric& metric) {
  const auto K = sectional_curvatures(metric);
  return {{2.0 * metric.A() * (K[1] * K[1] + K[2] * K[2]),
           2.0 * metric.B() * (K[2] * K[2] + K[0] * K[0]),
           2.0 * metric.C() * (K[0] * K[0] + K[1] * K[1])},
          Variance::Covariant02};
}

DiagTensor cross_curvature(const MilnorMetric& metric) {
  const auto K = sectional_curvatures(metric);
  return {{metric.A() * K[1] * K[2],
           metric.B() * K[2] * K[0],
           metric.C() * K[0] * K[1]},
          Variance::Covariant02};
}

std::optional<DiagTensor> cross_curvature_via_einstein(const MilnorMetric& metric) {
  const auto K = sectional_curvatures(metric);
  const double kmax = std::max({std::abs(K[0]), std::abs(K[1]), std::abs(K[2])});
  const double kmin = std::min({std::abs(K[0]), std::abs(K[1]), std::abs(K[2])});
  if (kmin < 1e-12 * std::max(kmax, 1.0)) return std::nullopt;

  const auto rc = ricci(metric);
  const double R = scalar_curvature(metric);
  // Einstein tensor E = Rc - (R/2) g, then raise both indices: P^ll = E_ll/g_ll^2.
  std::array<double, 3> P;
  for (int i = 0; i < 3; ++i) {
    const double gll = metric.g[i];
    P[i] = (rc.v[i] - 0.5 * R * gll) / (gll * gll);
  }
  const double detP = P[0] * P[1] * P[2];
  const double det_g_inv = 1.0 / (metric.A() * metric.B() * metric.C());
  const double factor = detP / det_g_inv;
  DiagTensor H{{factor / P[0], factor / P[1], factor / P[2]},
               Variance::Covariant02};
  return H;
}

DiagTensor rg2_tensor(const MilnorMetric& metric, double alpha) {
  const auto rc = ricci(metric);
  const auto rm2 = rm_squared(metric);
  DiagTensor out{{}, Variance::Covariant02};
  for (int i = 0; i < 3; ++i)
    out.v[i] = -2.0 * rc.v[i] - 0.5 * alpha * rm2.v[i];
  return out;
}

DiagTensor raise_index(const DiagTensor& tensor, const MilnorMetric& metric) {
  if (tensor.variance != Variance::Covariant02)
    throw std::invalid_argument("raise_index: tensor is already an operator");
  return {{tensor.v[0] / metric.A(), tensor.v[1] / metric.B(),
           tensor.v[2] / metric.C()},
          Variance::Operator11};
}

DiagOperator raise_to_operator(const DiagTensor& tensor, const MilnorMetric& metric) {
  const auto t = raise_index(tensor, metric);
  return DiagOperator{t.v};
}

MilnorMetric scale_metric(const MilnorMetric& metric, double c) {
  if (!(c > 0.0))
    throw std::domain_error("scale_metric: scale factor must be positive");
  return MilnorMetric(metric.group,
                      {c * metric.A(), c * metric.B(), c * metric.C()});
}

CurvatureReport curvature_report(const MilnorMetric& metric,
                                 std::optional<double> alpha) {
  CurvatureReport r;
  const auto tc = tilde_constants(metric);
  r.lambda_tilde = tc.lambda_tilde;
  r.mu_tilde = tc.mu_tilde;
  r.sectional = sectional_curvatures(metric);
  r.ricci = ricci(metric);
  r.scalar = scalar_curvature(metric);
  r.rm2 = rm_squared(metric);
  r.cross = cross_curvature(metric);
  if (alpha) r.rg2 = rg2_tensor(metric, *alpha);
  return r;
}

}  // namespace geoflow
