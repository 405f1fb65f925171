#pragma once

// Norm-one tori T_t = {x^2 + t y^2 = 1} over Q: exact group arithmetic,
// split-prime trivializations, torus valuations, and the rational conic
// parametrization used for weak approximation.

#include <optional>
#include <string>
#include <vector>

#include "spinlab/arith.hpp"

namespace spinlab {

/// A rational point on x^2 + t y^2 = 1, t a positive integer parameter.
struct TorusElem {
  Int t;
  Rational x;
  Rational y;

  TorusElem(Int t_, Rational x_, Rational y_);

  bool operator==(const TorusElem&) const = default;
};

TorusElem torus_identity(const Int& t);
TorusElem torus_mul(const TorusElem& z1, const TorusElem& z2);
TorusElem torus_inv(const TorusElem& z);

/// A square root of -t modulo p^k at an odd split prime p, giving the
/// embedding T_t(Q) -> (Z/p^k)^x on p-integral points.
struct Trivialization {
  Int t;
  Int p;
  int k;
  Int zeta;  // zeta^2 = -t (mod p^k), canonical representative
};

/// Returns none when p is inert or ramified for t. Throws on p = 2
/// (invertible in the base ring Z[1/2]) or non-prime p.
std::optional<Trivialization> trivialize(const Int& t, const Int& p, int k);

/// (x + y zeta) mod p^k. Throws std::domain_error when x or y has a
/// denominator divisible by p; the message reports torus_val.
Int rho_apply(const TorusElem& z, const Trivialization& triv);

/// 0 at inert/ramified p; min(val(z), -val(z)) <= 0 at split p, computed
/// through both embeddings at adaptive precision.
long torus_val(const TorusElem& z, const Int& p);

/// ((1 - t u^2)/(1 + t u^2), 2u/(1 + t u^2)); hits every rational point
/// except (-1, 0). Throws when 1 + t u^2 = 0.
TorusElem conic_point(const Int& t, const Rational& u);

/// Demand rho_p(z) = a (mod p^m) at a split prime p.
struct TorusConstraint {
  Int p;
  Int a;
  int m;
};

struct WeakApproxResult {
  TorusElem z;
  Rational u;                        // conic parameter realizing z
  std::vector<Int> support;          // odd primes q with torus_val(z, q) < 0
  std::vector<Trivialization> trivs; // the square roots used, one per constraint
};

/// Solves all constraints simultaneously by CRT on the conic parameter.
/// `avoid` lists extra primes at which z must stay integral. Targets
/// congruent to -1 are internally perturbed by 1 + p^m to dodge the
/// parametrization's excluded point.
WeakApproxResult weak_approx_torus(const Int& t, const std::vector<TorusConstraint>& constraints,
                                   const std::vector<Int>& avoid = {});

}  // namespace spinlab
