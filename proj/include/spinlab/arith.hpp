#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spinlab {

using Int = mpz_class;
using Rational = mpq_class;

/// A non-zero ideal of O = Z[1/2], identified with its unique positive odd
/// generator. m = 1 is the unit ideal.
struct OIdeal {
  Int m;

  explicit OIdeal(Int gen);
  bool is_unit() const { return m == 1; }

  friend bool operator==(const OIdeal&, const OIdeal&) = default;
};

/// An odd prime of Z, i.e. a non-zero prime of Z[1/2].
struct OddPrime {
  Int p;

  explicit OddPrime(Int prime);

  friend bool operator==(const OddPrime&, const OddPrime&) = default;
  friend bool operator<(const OddPrime& a, const OddPrime& b) { return a.p < b.p; }
};

/// Value of a P-adic valuation: an integer or +infinity (for 0).
struct ValOrInf {
  bool infinite = false;
  long v = 0;

  static ValOrInf infinity() { return {true, 0}; }
  static ValOrInf of(long value) { return {false, value}; }

  friend bool operator==(const ValOrInf&, const ValOrInf&) = default;
  friend bool operator<(const ValOrInf& a, const ValOrInf& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.v < b.v;
  }
  friend ValOrInf operator+(const ValOrInf& a, const ValOrInf& b) {
    if (a.infinite || b.infinite) return infinity();
    return of(a.v + b.v);
  }
};

/// A place of Q relevant to Hilbert symbols: an odd prime, 2, or infinity.
struct Place {
  enum class Kind { OddFinite, Two, Infinite };
  Kind kind;
  Int p;  // meaningful only for Kind::OddFinite

  static Place odd(Int prime) { return {Kind::OddFinite, std::move(prime)}; }
  static Place two() { return {Kind::Two, Int(2)}; }
  static Place infinite() { return {Kind::Infinite, Int(0)}; }
};

// --- primality and factoring -------------------------------------------

bool is_prime(const Int& n);

/// Prime factorization by trial division plus Pollard rho. Intended for
/// inputs up to the 2^64 class; larger inputs work but may be slow.
std::map<Int, unsigned> factor(Int n);

/// Squarefree part of a non-zero integer, sign preserved.
Int squarefree_part(const Int& n);

/// Squarefree representative of the square class of a non-zero rational.
Int square_class(const Rational& r);

bool is_perfect_square(const Int& n);

// --- valuations ---------------------------------------------------------

/// p-adic valuation of a non-zero integer.
long val_int(const Int& n, const Int& p);

/// P-adic valuation of a rational; val(0) = infinity.
ValOrInf val(const Rational& r, const OddPrime& p);

// --- modular arithmetic -------------------------------------------------

Int pow_mod(const Int& base, const Int& exp, const Int& mod);
Int inv_mod(const Int& a, const Int& mod);

/// Legendre symbol (a|p) for odd prime p; 0 when p | a.
int legendre(const Int& a, const Int& p);

/// Canonical square root of a modulo p^k, for gcd(a, p) = 1: the
/// representative zeta with 0 < zeta < p^k/2 and zeta^2 = a (mod p^k).
/// Tonelli-Shanks modulo p, then Hensel lifting. Returns nullopt when a is
/// a non-residue. Throws when p | a.
std::optional<Int> sqrt_mod(const Int& a, const OddPrime& p, unsigned k);

/// Chinese remainder theorem for pairwise-coprime odd moduli. Returns the
/// least non-negative residue modulo the product.
Int crt(const std::vector<std::pair<Int, Int>>& congruences);

/// Reduce a rational with denominator prime to `mod` to a residue.
/// Returns nullopt when the denominator shares a factor with `mod`.
std::optional<Int> rational_mod(const Rational& r, const Int& mod);

// --- Hilbert symbols ----------------------------------------------------

/// Local Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a
/// non-trivial solution over the completion at v.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

// --- four squares -------------------------------------------------------

/// Lagrange decomposition n = a^2 + b^2 + c^2 + d^2, a >= b >= c >= d >= 0.
/// Deterministic descending search below 10^6, Cornacchia-assisted beyond.
std::array<Int, 4> four_squares(const Int& n);

// --- ideal lattice ------------------------------------------------------

OIdeal ideal_product(const OIdeal& a, const OIdeal& b);
OIdeal ideal_sum(const OIdeal& a, const OIdeal& b);          // gcd
OIdeal ideal_intersection(const OIdeal& a, const OIdeal& b); // lcm
OIdeal ideal_power(const OIdeal& a, unsigned long e);        // e = 0 gives O

/// Odd part of an integer: n with all factors of 2 removed (sign kept).
Int odd_part(Int n);

/// Primes dividing the ideal (i.e. the odd prime divisors of its generator).
std::vector<OddPrime> ideal_primes(const OIdeal& I);

}  // namespace spinlab
