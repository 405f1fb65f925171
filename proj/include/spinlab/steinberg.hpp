#pragma once

// Symbols in the central extension 1 -> {+-1} -> Spin_q(Q) -> Theta_q(Q) -> 1:
// lifting spinor-norm-trivial rotations and computing commutators of lifts.

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/spin.hpp"

namespace spinlab {

/// A special orthogonal matrix with trivial spinor norm, i.e. an element of
/// the image of the twisted action of the spin group.
struct ThetaElement {
  SOMatrix m;

  explicit ThetaElement(SOMatrix matrix);
};

/// One of the two preimages in the spin group; the other is its negative.
SpinElement theta_lift(const ThetaElement& M);

/// Commutator of lifts of a commuting pair; +1 or -1, independent of the
/// choice of lifts. Throws on non-commuting inputs.
int gen_symbol(const ThetaElement& m1, const ThetaElement& m2);

struct SymbolReport {
  bool ok = true;
  std::string counterexample;  // first failure, empty when ok
  long identity_checks = 0;    // [g:1] = [1:g] = +1
  long antisymmetry_checks = 0;
  long bimultiplicativity_checks = 0;
  long conjugation_checks = 0;
  long lift_independence_checks = 0;
  long steinberg_relation_checks = 0;  // [h1(a) : h2(1-a)] = +1
  long reflection_sign_checks = 0;     // orthogonal reflection pairs give -1
};

/// Randomized identity suite over commuting families: coroot images,
/// disjoint-plane rotations, and orthogonal reflection products.
SymbolReport symbol_property_suite(std::uint64_t seed, int pairs = 100);

}  // namespace spinlab
