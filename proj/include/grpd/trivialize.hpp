#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/action.hpp"
#include "grpd/functor.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/// Trivialization of a transitive groupoid at a base point: an isomorphism
/// onto the product of the isotropy group at the base point with the pair
/// groupoid of the objects.
struct Trivialization {
  int base_point;
  std::vector<int> fiber;    // arrows with src = base point
  std::vector<int> section;  // object -> arrow of the fiber landing there
  GroupoidPtr trivial_model;
  Functor to_trivial;
  Functor from_trivial;
};

/// Requires a transitive groupoid; reports a disconnected object pair
/// otherwise. When no section is supplied, the minimal-name arrow out of the
/// base point is chosen for each object.
Trivialization trivialize(GroupoidPtr g, int base_point,
                          const std::vector<int>* section = nullptr);

struct TransitiveComponent {
  std::vector<int> objects;
  Groupoid groupoid;
};

std::vector<TransitiveComponent> transitive_components(const Groupoid& g);

/// Gauge groupoid of a principal action: the quotient of pair(E) by the
/// diagonal action of a group acting freely with fibers = orbits. When an
/// explicit fiber map is given, each fiber must be exactly one orbit.
struct GaugeGroupoid {
  GroupoidPtr groupoid;
  Functor quotient;  // from pair(E)
};

GaugeGroupoid gauge_groupoid(const ActionLaw& action,
                             const std::vector<int>* fiber_map = nullptr,
                             const std::vector<std::string>* base_names = nullptr);

}  // namespace grpd
