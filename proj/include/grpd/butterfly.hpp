#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/functor.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

enum class Transversality { kTransverse, kTransversal, kNeither };

/// Result of restricting the division of K to the fiber product of two wide
/// subgroupoids M, N: (m, n) |-> m.n^-1. Transverse = bijective,
/// transversal = surjective.
struct TransversalityCheck {
  Transversality kind;
  long pair_count = 0;  // size of the fiber product of the two wings
  /// pairs (m, n) of ambient arrow indices with a common source, and the
  /// image arrow per entry; only materialized for small fiber products
  std::vector<std::pair<int, int>> domain;
  std::vector<int> image;
  std::optional<int> missed_arrow;                  // not surjective
  std::optional<std::pair<int, int>> collision;     // two domain entries, same image
  bool intersection_is_null = false;                // M meets N in units only
};

TransversalityCheck transversality(const Groupoid& k, const Groupoid& m,
                                   const Groupoid& n);

/// Completes a chain x'' -(R)-> x -(R')-> y over a transverse pair: returns
/// the unique fourth vertex z with x'' -(R')-> z -(R)-> y, the two new edges,
/// and the diagonal composite in K.
struct SquareCompletion {
  int fourth_vertex;
  int new_r_edge;    // z -> y, in R
  int new_r2_edge;   // x'' -> z, in R'
  int composite;     // the diagonal, an arrow of K
};

SquareCompletion mixed_law_complete(const Groupoid& k, const Groupoid& r,
                                    const Groupoid& r2, int r_edge,
                                    int r2_edge);

/// The conjugation diagram: a core groupoid with two transverse principal
/// wings, two legs with the wings as kernels, and the two restricted actors.
struct Butterfly {
  GroupoidPtr core;
  Groupoid wing_r;    // principal wide subgroupoid of the core
  Groupoid wing_r2;
  Functor leg_q;      // core -> G,  kernel = wing_r2
  Functor leg_q2;     // core -> G', kernel = wing_r
  Functor actor_r;    // wing_r  -> G,  restriction of leg_q
  Functor actor_r2;   // wing_r2 -> G', restriction of leg_q2
};

/// Validates every butterfly invariant; returns all violations.
Diagnostics check_butterfly(const Butterfly& b);

/// Conjugation: from a principal actor with surjective object map, builds
/// the full butterfly (core = pullback of the target along the object map,
/// opposite groupoid = two-sided quotient of the core by the embedded wing).
Butterfly conjugate_principal_actor(const Functor& r);

/// Groupoid of commuting squares, under horizontal composition. A square is
/// stored as (top, bottom, left, right) with left.top = bottom.right; it is
/// an arrow from its right side to its left side.
struct SquareGroupoid {
  GroupoidPtr box;
  Functor pi_up;    // square -> top side,    objects: g -> src g
  Functor pi_down;  // square -> bottom side, objects: g -> tgt g
  Butterfly canonical;
};

SquareGroupoid square_groupoid(GroupoidPtr g);

/// The two wing composition laws on the core of a transverse pair, derived
/// from square completion. Both exist exactly on matching edges; the
/// interchange law holds on every composable 2x2 block.
struct CoreSquare {
  // corners: the K-arrow k runs from corner a to corner d across the square
  //   a --(R')-- c     a --(R)-- c2
  //   with c --(R)-- d and c2 --(R')-- d
  int a, c, c2, d;
  int arrow;  // the K-arrow
};

CoreSquare core_square(const Groupoid& k, const Groupoid& r,
                       const Groupoid& r2, int arrow);

/// Composition in the horizontal wing law (sharing the a--c / c2--d edge
/// pair) and the vertical one. Throws when the blocks do not match.
int wing_compose_horizontal(const Groupoid& k, const Groupoid& r,
                            const Groupoid& r2, int second, int first);
int wing_compose_vertical(const Groupoid& k, const Groupoid& r,
                          const Groupoid& r2, int second, int first);

}  // namespace grpd
