#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpd/butterfly.hpp"
#include "grpd/functor.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/// Pair of exactors with a common source: numerator K -> G, denominator
/// K -> H. Read as a generalized morphism H -> G.
struct Fraction {
  Functor num;
  Functor den;
};

/// Builds a fraction after checking both legs classify as exactors.
Fraction make_fraction(Functor num, Functor den);

enum class Cotransversality { kCotransverse, kCotransversal, kNeither };

/// Applies the transversality test to the kernels of the two legs.
/// Cotransverse kernels mark the fraction irreducible.
Cotransversality cotransversality(const Fraction& f);

/// Equivalence class of a fraction whose denominators are s-equivalences and
/// whose kernels are at least cotransversal.
struct Meromorphism {
  Fraction rep;
  bool cotransversal = false;
  bool cotransverse = false;
  bool denominator_s_equivalence = false;
  bool irreducible = false;
};

Meromorphism make_meromorphism(Fraction f);

/// Functorial section of a split s-equivalence (object section by minimal
/// index, arrows through full faithfulness).
Functor section_of(const Functor& q);

/// Equivalence of fractions. The decision reduces both sides along sections
/// of their denominators and searches for a natural isomorphism; strict
/// witness pairs (k, k') with num.k = num'.k' and den.k = den'.k' are
/// returned when the bounded search finds them.
struct FractionEquivalence {
  bool equivalent = false;
  std::optional<std::pair<Functor, Functor>> witnesses;
  std::optional<NaturalTransformation> certificate;
};

/// With `extended`, the strict witness search also accepts s-exactor
/// witnesses (the localization generated by s-extensors).
FractionEquivalence fractions_equivalent(const Fraction& a, const Fraction& b,
                                         bool extended = false);

/// Quotients the common source by Ker(num) /\ Ker(den); the result is a
/// cotransverse fraction equivalent to the input.
Fraction make_irreducible(const Meromorphism& m);

/// Composite through the fiber product of m2's denominator and m1's
/// numerator. The result is not normalized to an irreducible representative.
Meromorphism compose_meromorphisms(const Meromorphism& m2,
                                   const Meromorphism& m1);

/// Canonical fraction of a plain functor f: H -> G. The core consists of
/// triples (h, l, r) of an H-arrow framed by two G-arrows; the denominator
/// is a split s-equivalence and the fraction is irreducible.
struct Holograph {
  Fraction fraction;
  Functor section;  // section of the denominator
};

Holograph holograph(const Functor& f);

// ---------------------------------------------------------------------------
// Morita equivalence

/// Symmetric witness: two s-equivalences out of a common core.
struct MoritaWitness {
  GroupoidPtr core;
  Functor leg_first;    // core -> G
  Functor leg_second;   // core -> H
  Groupoid ker_first;   // kernel of leg_first (principal)
  Groupoid ker_second;  // kernel of leg_second (principal)
  bool irreducible = false;
};

Diagnostics check_morita_witness(const MoritaWitness& w);

struct MoritaResult {
  bool equivalent = false;
  std::optional<MoritaWitness> witness;
};

/// Decides by the skeleton invariant (orbit matching with isomorphic
/// isotropy groups), then constructs and validates an explicit witness.
MoritaResult morita_equivalent(GroupoidPtr g, GroupoidPtr h);

/// Builds an equivalence functor h -> g from a skeleton matching, if any.
std::optional<Functor> equivalence_functor(GroupoidPtr g, GroupoidPtr h);

/// Pulls the witness core back along the fold of a doubled base, so that the
/// two leg object maps acquire sections with disjoint images.
MoritaWitness split_base_witness(const MoritaWitness& w);

/// Restriction of the core to disjoint section images of the two bases:
/// a groupoid that decomposes as G + G' + S + S^-1 with two fully faithful
/// inclusions that are equivalences.
struct HatPresentation {
  GroupoidPtr hat;
  Functor include_first;   // G  -> hat
  Functor include_second;  // H  -> hat
  int count_first = 0;     // arrows within the first base
  int count_second = 0;    // arrows within the second base
  int count_cross = 0;     // arrows from the first base into the second
};

HatPresentation hat_presentation(const MoritaWitness& w);

// ---------------------------------------------------------------------------
// Covering presentation

/// Pullback presentation over a surjection r: U ->> objects(G): the induced
/// groupoid H over U and the pair of split s-equivalences from the groupoid
/// induced over the kernel pair of r.
struct CechPresentation {
  GroupoidPtr induced;        // H over U
  Functor induced_projection; // H -> G (s-equivalence)
  GroupoidPtr cover_core;     // K over U x_B U
  Functor leg_one, leg_two;   // K -> H
  Functor section_one, section_two;  // diagonal sections
};

CechPresentation cech_presentation(GroupoidPtr g,
                                   const std::vector<std::string>& cover,
                                   const std::vector<int>& r);

}  // namespace grpd
