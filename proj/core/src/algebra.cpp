#include "geoflow/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace geoflow {

namespace {

constexpr std::array<std::array<int, 3>, 6> kSignatures = {{
    {0, 0, 0},    // R3
    {1, 0, 0},    // Heisenberg
    {1, 1, 0},    // E2
    {1, 0, -1},   // E11
    {1, 1, -1},   // SL2tilde
    {1, 1, 1},    // SU2
}};

int signature_index(GroupKind k) { return static_cast<int>(k); }

// Cyclic bracket table: [e2,e3] = l1 e1, [e3,e1] = l2 e2, [e1,e2] = l3 e3.
// Relations are stored with i < j, so [e1,e3] = -l2 e2.
const std::array<std::vector<BracketRelation>, 6> kBrackets = [] {
  std::array<std::vector<BracketRelation>, 6> table;
  for (int gi = 0; gi < 6; ++gi) {
    const auto& lam = kSignatures[gi];
    std::vector<BracketRelation> rels;
    if (lam[0] != 0) rels.push_back({2, 3, 1, lam[0]});
    if (lam[1] != 0) rels.push_back({1, 3, 2, -lam[1]});
    if (lam[2] != 0) rels.push_back({1, 2, 3, lam[2]});
    table[gi] = std::move(rels);
  }
  return table;
}();

}  // namespace

std::string group_name(GroupKind k) {
  switch (k) {
    case GroupKind::R3: return "r3";
    case GroupKind::Heisenberg: return "heisenberg";
    case GroupKind::E2: return "e2";
    case GroupKind::E11: return "e11";
    case GroupKind::SL2tilde: return "sl2";
    case GroupKind::SU2: return "su2";
  }
  return "?";
}

StructureConstants structure_of(GroupKind group) {
  return StructureConstants{kSignatures[signature_index(group)]};
}

Bracket bracket(GroupKind group, int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw std::invalid_argument("bracket: frame indices must be in 1..3");
  if (i == j) return {0, 0};
  int sign = 1;
  int a = i, b = j;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  for (const auto& r : kBrackets[signature_index(group)]) {
    if (r.i == a && r.j == b) return {sign * r.coeff, r.k};
  }
  return {0, 0};
}

std::span<const BracketRelation> nonzero_brackets(GroupKind group) {
  return kBrackets[signature_index(group)];
}

DerivationCheck is_diagonal_derivation(GroupKind group, const DiagOperator& D,
                                       double tol) {
  if (!(tol >= 0.0))
    throw std::invalid_argument("is_diagonal_derivation: tol must be >= 0");
  double residual = 0.0;
  for (const auto& r : nonzero_brackets(group)) {
    const double v =
        std::abs(D.d[r.i - 1] + D.d[r.j - 1] - D.d[r.k - 1]);
    residual = std::max(residual, v);
  }
  return {residual <= tol, residual};
}

double default_derivation_tol(const DiagOperator& D) {
  return 1e-9 * std::max(1.0, D.max_abs());
}

bool is_nice_basis(GroupKind group) {
  const auto rels = nonzero_brackets(group);
  // condition 1: for all i, j there is at most one k with c_ij^k != 0
  // (structural, since each relation stores a single target)
  for (std::size_t a = 0; a < rels.size(); ++a)
    for (std::size_t b = a + 1; b < rels.size(); ++b)
      if (rels[a].i == rels[b].i && rels[a].j == rels[b].j) return false;
  // condition 2: for all i, k there is at most one j with c_ij^k != 0
  auto pairs_conflict = [&](int i, int k) {
    int count = 0;
    for (const auto& r : rels) {
      if ((r.i == i || r.j == i) && r.k == k) ++count;
    }
    return count > 1;
  };
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k)
      if (pairs_conflict(i, k)) return false;
  return true;
}

NormalizedMetric normalize_metric(const MilnorMetric& metric) {
  const double A = metric.A(), B = metric.B(), C = metric.C();
  std::array<double, 3> s{1.0, 1.0, 1.0};
  switch (metric.group) {
    case GroupKind::R3:
      s = {1.0 / A, 1.0 / B, 1.0 / C};
      break;
    case GroupKind::Heisenberg:
      s = {1.0 / (B * C), 1.0 / B, 1.0 / C};
      break;
    case GroupKind::E2:
      // lambda^1 = lambda^2 = 1 pins the frame scalings to (s, s, 1)
      s = {1.0 / A, 1.0 / A, 1.0};
      break;
    case GroupKind::E11:
      s = {1.0 / C, 1.0, 1.0 / C};
      break;
    case GroupKind::SL2tilde:
    case GroupKind::SU2:
      break;  // all structure constants nonzero: normal form is the metric itself
  }
  MilnorMetric out(metric.group,
                   {A * s[0], B * s[1], C * s[2]});
  return {out, s};
}

MilnorMetric e11_canonical_form(const MilnorMetric& metric) {
  if (metric.group != GroupKind::E11)
    throw std::invalid_argument("e11_canonical_form: metric must be on E(1,1)");
  MilnorMetric m = normalize_metric(metric).metric;
  if (m.A() < 1.0) {
    // swap automorphism: (A, B, 1) and (1/A, B, 1) are isometric
    m = MilnorMetric(GroupKind::E11, {1.0 / m.A(), m.B(), 1.0});
  }
  return m;
}

std::optional<GroupKind> parse_group(std::string_view name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "r3") return GroupKind::R3;
  if (s == "heisenberg" || s == "nil3" || s == "heis") return GroupKind::Heisenberg;
  if (s == "e2") return GroupKind::E2;
  if (s == "e11" || s == "sol") return GroupKind::E11;
  if (s == "sl2" || s == "sl2tilde") return GroupKind::SL2tilde;
  if (s == "su2") return GroupKind::SU2;
  return std::nullopt;
}

}  // namespace geoflow
