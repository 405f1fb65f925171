#pragma once

// Reduction of Clifford/Spin data modulo odd m, congruence-subgroup
// membership, mod-p^k isometries between the definite and split forms, and
// conjugacy-width BFS in small finite quotients.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinlab/spin.hpp"

namespace spinlab {

/// A Clifford element with coefficients in Z/m, m odd. Zero coefficients
/// are never stored.
struct ModMultivector {
  Int modulus;
  std::map<Blade, Int> terms;

  bool operator==(const ModMultivector&) const = default;
};

/// Coefficient-wise reduction; denominators must be prime to m (they are
/// powers of 2 for everything this library builds). Throws on even m.
ModMultivector reduce_mod(const Multivector& g, const Int& m);

ModMultivector gp_mod(const QuadForm& form, const ModMultivector& a, const ModMultivector& b);
ModMultivector reverse_mod(const ModMultivector& a);

bool in_congruence_subgroup(const SpinElement& g, const OIdeal& I);

/// Mod-m spin membership: even, x x~ = 1, and grade-1 twisted action.
bool is_spin_mod(const QuadForm& form, const ModMultivector& x);

/// Action matrix of the twisted action mod m; entries in [0, m).
/// Throws when x is not a mod-m spin element.
std::vector<std::vector<Int>> action_matrix_mod(const QuadForm& form, const ModMultivector& x);

/// Full enumeration of the mod-m spin elements by coefficient scan over
/// even blades. Feasible only for tiny (dim, m); throws beyond the cap.
std::vector<ModMultivector> enumerate_spin_mod(const QuadForm& form, const Int& m,
                                               unsigned long cap = 50000000);

using IntMat = std::vector<std::vector<Int>>;

/// M with M^T diag(f_a) M = diag(f_s) (mod p^k) and unit determinant.
/// Solvable for odd p exactly when dim = 0 (mod 4) or p = 1 (mod 4);
/// otherwise the two forms have different square-class determinants mod p
/// and a domain_error is thrown.
IntMat isometry_mod(const Int& p, int k, int dim);

/// A small finite quotient Spin_form(Z/m) presented by generators.
struct FiniteGroupSpec {
  QuadForm form;
  Int modulus;  // odd prime power
  std::vector<ModMultivector> generators;
};

struct WidthReport {
  unsigned long group_order = 0;
  unsigned long class_size = 0;        // |gcl(x)| including identity
  unsigned long subgroup_order = 0;    // |<gcl(x)>|
  long width = -1;                     // -1 when the cap was exceeded
  std::vector<unsigned long> layers;   // new elements per BFS layer
  std::string mode;                    // "exact" or "sampled"
  bool cap_exceeded = false;
  long width_with_center = -2;         // coefficient-hash rerun; -2 = skipped
};

/// Enumerates <generators>, forms the generalized conjugacy class of x
/// (conjugates of x and x^-1, plus the identity), and BFS-closes its
/// powers. Elements are identified by their action matrices mod m, which
/// mods out the center; small groups are rerun with coefficient hashing to
/// surface any width change caused by the center.
WidthReport gcl_width_bfs(const FiniteGroupSpec& spec, const ModMultivector& x, int cap,
                          unsigned long enumeration_cap = 10000000);

/// Standard generators of the mod-m quotient: plane "rotations"
/// c + s e_i e_j over pairs with d_i d_j = 1, plus isotropic-plane shears,
/// enough to generate the full quotient for the small cases treated here.
FiniteGroupSpec spin_quotient_generators(const QuadForm& form, const Int& modulus);

/// [e12(t), e23(s)] = e13(ts) in SL3(Z/m).
bool sl3_commutator_identity(const Int& t, const Int& s, const Int& m);

}  // namespace spinlab
