#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinlab/arith.hpp"

namespace spinlab {

using Vector = std::vector<Rational>;

/// Diagonal quadratic form d_1 x_1^2 + ... + d_{2n} x_{2n}^2 on Q^{2n}.
struct QuadForm {
  int dim = 0;
  std::vector<Rational> diag;

  QuadForm() = default;
  QuadForm(int dimension, std::vector<Rational> diagonal);

  /// f_a: the definite form, all d_i = 1.
  static QuadForm definite(int dim);
  /// f_s: the split form, d_{2i-1} = -1 and d_{2i} = +1.
  static QuadForm split(int dim);

  Rational eval(const Vector& v) const;
  /// Polar bilinear form B(v, w) = sum d_i v_i w_i, so f(v) = B(v, v).
  Rational bilinear(const Vector& v, const Vector& w) const;

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

/// A basis blade e_T, encoded as a bitmask over {1,...,2n} (bit i-1 <-> e_i).
using Blade = std::uint32_t;

int blade_grade(Blade b);
std::string blade_to_string(Blade b);

/// Sign and contraction of the product e_A e_B: the result blade is A xor B
/// and the coefficient is sign * prod_{i in A cap B} d_i.
Rational blade_product_coeff(Blade a, Blade b, const QuadForm& form);

/// Sparse element of Cliff_f(Q): blade -> non-zero rational coefficient.
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(QuadForm form) : form_(std::move(form)) {}
  Multivector(QuadForm form, std::map<Blade, Rational> terms);

  static Multivector scalar(const QuadForm& form, const Rational& c);
  static Multivector basis_blade(const QuadForm& form, Blade b, const Rational& c = 1);

  const QuadForm& form() const { return form_; }
  const std::map<Blade, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;
  Rational scalar_part() const;
  /// True when every blade has even grade.
  bool is_even() const;
  /// True when every blade has grade exactly 1.
  bool is_grade(int k) const;
  std::size_t term_count() const { return terms_.size(); }

  Multivector grade_part(int k) const;
  Vector grade1_coords() const;  // requires is_grade(1) or zero

  void add_term(Blade b, const Rational& c);

  std::string to_string() const;

  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  QuadForm form_;
  std::map<Blade, Rational> terms_;
};

Multivector operator+(const Multivector& x, const Multivector& y);
Multivector operator-(const Multivector& x, const Multivector& y);
Multivector operator-(const Multivector& x);
Multivector operator*(const Rational& c, const Multivector& x);

/// Geometric product.
Multivector gp(const Multivector& x, const Multivector& y);

/// Canonical involution: e_{i_1}...e_{i_k} -> e_{i_k}...e_{i_1}, i.e. the
/// grade-k part scales by (-1)^(k(k-1)/2).
Multivector reverse(const Multivector& x);

/// Grade-1 embedding of a coordinate vector.
Multivector embed_vector(const QuadForm& form, const Vector& v);

/// Twisted action tau_g(v) = g e_v g'. Throws when the result is not
/// grade-1 (g does not normalize the vector space).
Vector twisted_action(const Multivector& g, const Vector& v);

}  // namespace spinlab
