#ifndef GEOFLOW_TYPES_HPP
#define GEOFLOW_TYPES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace geoflow {

/// The six simply connected three-dimensional unimodular Lie groups,
/// identified by the signature of their Milnor structure constants.
enum class GroupKind { R3, Heisenberg, E2, E11, SL2tilde, SU2 };

inline constexpr std::array<GroupKind, 6> all_groups = {
    GroupKind::R3,       GroupKind::Heisenberg, GroupKind::E2,
    GroupKind::E11,      GroupKind::SL2tilde,   GroupKind::SU2};

/// Structure-constant signature (l1, l2, l3), each in {1, 0, -1} and
/// ordered l1 >= l2 >= l3.  The nonzero brackets of the Milnor basis are
/// [e2,e3] = l1 e1, [e3,e1] = l2 e2, [e1,e2] = l3 e3.
struct StructureConstants {
  std::array<int, 3> lambdas;
};

/// Diagonal (1,1)-operator in the Milnor frame, stored by its eigenvalues.
struct DiagOperator {
  std::array<double, 3> d{0.0, 0.0, 0.0};

  double max_abs() const {
    double m = 0.0;
    for (double x : d) m = std::abs(x) > m ? std::abs(x) : m;
    return m;
  }
};

enum class Variance { Covariant02, Operator11 };

/// Diagonal symmetric tensor in the Milnor frame with a variance tag so
/// that covariant components and operator components cannot be mixed up.
struct DiagTensor {
  std::array<double, 3> v{0.0, 0.0, 0.0};
  Variance variance = Variance::Covariant02;

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::abs(x) > m ? std::abs(x) : m;
    return m;
  }
};

/// Left-invariant metric g = A s1(x)s1 + B s2(x)s2 + C s3(x)s3 in a Milnor
/// frame of the given group.  All components must be positive.
struct MilnorMetric {
  GroupKind group;
  std::array<double, 3> g;  // (A, B, C)

  MilnorMetric(GroupKind group_, std::array<double, 3> components)
      : group(group_), g(components) {
    for (double x : g) {
      if (!(x > 0.0))
        throw std::domain_error("MilnorMetric: components must be positive");
    }
  }
  MilnorMetric(GroupKind group_, double A, double B, double C)
      : MilnorMetric(group_, std::array<double, 3>{A, B, C}) {}

  double A() const { return g[0]; }
  double B() const { return g[1]; }
  double C() const { return g[2]; }
};

std::string group_name(GroupKind k);

}  // namespace geoflow

#endif
