#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/functor.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/// Left action of a groupoid on a finite set fibered over its objects.
/// act(g, x) is defined exactly when src(g) = proj(x), and then lands over
/// tgt(g).
struct ActionLaw {
  GroupoidPtr actor;
  std::vector<std::string> points;
  std::vector<int> proj;  // point -> object of actor
  std::vector<int> act;   // arrow x point -> point, -1 off the domain

  int operate(int g, int x) const {
    return act[static_cast<size_t>(g) * points.size() + x];
  }
  bool defined(int g, int x) const { return operate(g, x) >= 0; }
  int point_index(const std::string& name) const;
};

/// Checks the action axioms; returns all violations.
Diagnostics check_action(const ActionLaw& a);

/// Builds an ActionLaw and throws on any violated axiom.
ActionLaw make_action(GroupoidPtr actor, std::vector<std::string> points,
                      std::vector<int> proj, std::vector<int> act);

/// Action groupoid on the space, together with the projection to the actor.
/// Arrows are the pairs (g, x) on the action's domain, from x to g |- x.
struct ActionGroupoid {
  GroupoidPtr groupoid;
  Functor to_actor;
};

ActionGroupoid action_to_actor(const ActionLaw& a);

/// Inverse of action_to_actor: reads the action law off a functor whose
/// source-square comparison map is bijective.
ActionLaw actor_to_action(const Functor& f);

/// The two translation actions of a groupoid on its own arrows and the two
/// translation actions of the opposite groupoid, with their actors.
struct CanonicalActions {
  GroupoidPtr delta_src;   // pairs of arrows with a common source
  GroupoidPtr nabla_tgt;   // pairs of arrows with a common target
  GroupoidPtr op;          // opposite groupoid, shared by the conjugates
  Functor delta;           // delta_src -> G,    (y,x) |-> y.x^-1
  Functor delta_bar;       // nabla_tgt -> G,    (y,x) |-> y^-1.x
  Functor delta_conj;      // delta_src -> G^op, (y,x) |-> x.y^-1
  Functor delta_bar_conj;  // nabla_tgt -> G^op, (y,x) |-> x^-1.y
  ActionLaw lambda;        // g |- x = g.x    over tgt
  ActionLaw lambda_bar;    // g |- x = x.g^-1 over src
  ActionLaw rho;           // action of G^op: g |- x = g^-1.x
  ActionLaw rho_bar;       // action of G^op: g |- x = x.g
};

CanonicalActions canonical_actions(GroupoidPtr g);

/// True iff the action groupoid has an injective anchor (the action is
/// free); on failure the witness is a non-unit arrow fixing a point.
struct PrincipalityCheck {
  bool principal;
  std::optional<std::pair<int, int>> witness;  // (arrow, point)
};

PrincipalityCheck is_principal_action(const ActionLaw& a);

}  // namespace grpd
