#pragma once

// Constructive approximation: parameter searches, unit and pair
// approximation on norm-one tori, torus-to-Spin lifting, Legendre-
// conditioned prime scans, class numbers, and principality witnesses.

#include <optional>
#include <utility>
#include <vector>

#include "spinlab/spin.hpp"
#include "spinlab/tori.hpp"

namespace spinlab {

/// One verified congruence rho_p(z_which) = rhs (mod p^k), stored with the
/// square root of -t it used so it can be rechecked with no code from this
/// module: zeta^2 = -t (mod p^k), lhs = (x + y zeta) (mod p^k), lhs = rhs.
struct CongruenceRecord {
  int which;  // index into ApproxCertificate::zs
  Int p;
  int k;
  Int zeta;
  Int lhs;
  Int rhs;
};

struct ApproxCertificate {
  std::vector<Rational> inputs;  // a, or a1 and a2
  OIdeal I{1};
  Int t = 1;
  std::vector<TorusElem> zs;
  std::vector<CongruenceRecord> congruences;
  std::vector<std::vector<Int>> supports;  // primes with negative torus_val, per z
};

/// Commuting pair of verified Spin elements over the definite form,
/// together with the plane data that built it.
struct SpinPair {
  SpinElement g1;
  SpinElement g2;
  Int t;
  std::vector<Vector> vs;  // v1..v3, orthonormal standard vectors
  std::vector<Vector> us;  // u1..u3, orthogonal four-square vectors of norm t
};

/// Least k <= cap with t_k = 2^{2mk} - x positive, not a perfect square,
/// and -s t_k not a perfect square for every s in s_list. Throws when the
/// cap is exhausted.
int foya_search(const Int& x, int m, const std::vector<Int>& s_list, int cap = 64);

/// z in T_t(O) (denominators powers of 2 only) with rho_p(z) = a
/// (mod p^{val_p(I)}) at every p | I. Requires a to be a unit at each p | I.
ApproxCertificate approx_unit(const Rational& a, const OIdeal& I);

/// Pair z1, z2 over a common t with rho_p(z_i) = a_i (mod p^{val_p(I)});
/// the support sets of z1 and z2 are disjoint from each other and from the
/// primes of I.
ApproxCertificate approx_pair(const Rational& a1, const Rational& a2, const OIdeal& I);

/// Lifts the pair to commuting Spin elements in dimension >= 20 built from
/// the planes (V1 U1, V2 U2) and (V2 U2, V3 U3).
SpinPair torus_to_spin(const Int& t, const TorusElem& z1, const TorusElem& z2, int dim = 20);

struct PrimeCond {
  enum Kind { Residue, Symbol } kind;
  Int a;  // residue, or the Legendre argument
  Int m;  // modulus, or the required symbol value +-1
};

/// First `count` odd primes satisfying all conditions, ascending.
std::vector<Int> find_primes_legendre(const std::vector<PrimeCond>& conds, int count,
                                      Int cap = 10000000);

/// Number of reduced primitive binary quadratic forms of discriminant D.
long class_number(const Int& D);

/// (x, y) with x^2 + t y^2 = p (t = 1, 2 mod 4) or x^2 + xy + (1+t)/4 y^2
/// = p (t = 3 mod 4); none when the prime above p is non-principal.
std::optional<std::pair<Int, Int>> principal_witness(const Int& t, const Int& p);

}  // namespace spinlab
