#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd {

/// Morphism of groupoids: an arrow map and an object map commuting with all
/// structure maps. Instances hold shared ownership of their endpoints.
struct Functor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<int> arrow_map;   // arrow of source -> arrow of target
  std::vector<int> object_map;  // object of source -> object of target

  int on_arrow(int a) const { return arrow_map[a]; }
  int on_object(int b) const { return object_map[b]; }
};

struct RawFunctor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::map<std::string, std::string> arrow_map;
  std::map<std::string, std::string> object_map;
};

struct FunctorValidation {
  std::optional<Functor> functor;
  Diagnostics issues;
  bool ok() const { return functor.has_value(); }
};

FunctorValidation validate_functor(const RawFunctor& raw);

/// Re-checks the commutation squares on an assembled Functor.
Diagnostics check_functor(const Functor& f);

Functor identity_functor(GroupoidPtr g);
Functor compose_functors(const Functor& g, const Functor& f);

/// Builds the functor from name-level maps, failing loudly on any mismatch.
Functor make_functor(GroupoidPtr source, GroupoidPtr target,
                     const std::function<std::string(const std::string&)>& on_arrow,
                     const std::function<std::string(const std::string&)>& on_object);

// ---------------------------------------------------------------------------
// Classification by the two comparison maps: H -> G x_{BxB} (ExE) for the
// anchor square, H -> G x_B E for the source square.

struct MorphismClassification {
  bool i_functor = false;        // injective on arrows (hence on objects)
  bool s_functor = false;        // surjective on arrows and objects
  bool faithful = false;
  bool full = false;
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool equivalence = false;      // fully faithful + essentially surjective
  bool s_equivalence = false;    // fully faithful + surjective on objects
  bool extensor = false;         // anchor square full
  bool s_extensor = false;
  bool actor = false;            // source square cartesian
  bool exactor = false;          // source square full
  bool s_exactor = false;
  bool principal_source = false;
  bool null = false;             // source and/or target has only units

  std::set<std::string> labels() const;
};

MorphismClassification classify_morphism(const Functor& f);

// ---------------------------------------------------------------------------

/// Groupoid induced along p: E -> objects(G); arrows are triples (e', g, e)
/// with g: p(e) -> p(e'). The canonical projection is fully faithful, and an
/// s-equivalence when p is surjective.
struct PullbackGroupoid {
  GroupoidPtr groupoid;
  Functor projection;
};

PullbackGroupoid pullback_groupoid(GroupoidPtr g,
                                   const std::vector<std::string>& space,
                                   const std::vector<int>& p);

/// Wide subgroupoid of the source on the arrows sent to units.
Groupoid kernel(const Functor& f);

/// Arrow indices (into f.source) of the kernel.
std::vector<int> kernel_arrows(const Functor& f);

/// Quotient of h by the two-sided classes K.h.K of a wide subgroupoid K.
/// Fails with "quotient not well-defined" and a witnessing pair when the
/// classes are not blocks of the composition.
struct BilateralQuotient {
  GroupoidPtr quotient;
  Functor projection;
};

BilateralQuotient bilateral_quotient(GroupoidPtr h, const Groupoid& k);

// ---------------------------------------------------------------------------

/// Invertible natural transformation. component[b] is an arrow
/// second(b) -> first(b) of the common target groupoid, natural in b.
struct NaturalTransformation {
  std::vector<int> component;
};

std::optional<NaturalTransformation> natural_iso(const Functor& f,
                                                 const Functor& g);

/// Isomorphism of groupoids, if any (matches orbits, then isotropy groups).
std::optional<Functor> find_isomorphism(GroupoidPtr a, GroupoidPtr b);

/// All functors h -> g, enumerated by backtracking. Meant for small inputs.
std::vector<Functor> enumerate_functors(GroupoidPtr h, GroupoidPtr g);

}  // namespace grpd
