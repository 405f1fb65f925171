#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlab/clifford.hpp"

namespace spinlab {

using Mat = std::vector<std::vector<Rational>>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vector mat_vec(const Mat& m, const Vector& v);
Rational mat_det(Mat m);
Mat mat_transpose(const Mat& m);

/// Element of SO_f(Q): M^T diag(f) M = diag(f) and det M = +1.
struct SOMatrix {
  QuadForm form;
  Mat m;  // m[row][col]; columns are images of basis vectors

  SOMatrix(QuadForm f, Mat matrix);  // verifies orthogonality and det

  friend bool operator==(const SOMatrix&, const SOMatrix&) = default;
};

/// Verified element of Spin_f(Q), with its SO action matrix cached.
class SpinElement {
 public:
  /// Verifies even grade, g g' = 1, and grade-1 twisted actions; throws on
  /// failure with the violated condition.
  explicit SpinElement(Multivector g);

  const Multivector& mv() const { return g_; }
  const QuadForm& form() const { return g_.form(); }
  const SOMatrix& matrix() const { return matrix_; }

  SpinElement inverse() const;  // g' (since g g' = 1)

  friend bool operator==(const SpinElement&, const SpinElement&) = default;

 private:
  Multivector g_;
  SOMatrix matrix_;
};

SpinElement spin_mul(const SpinElement& a, const SpinElement& b);

/// Membership check returning the reason on rejection.
struct SpinCheck {
  bool ok = false;
  std::string reason;
  std::optional<SOMatrix> matrix;
};
SpinCheck is_spin(const Multivector& x);

/// Reflection tau_a in the hyperplane a^perp: x - (2 B(x,a)/f(a)) a.
/// Det -1, involution. Throws on isotropic a.
Mat reflection_matrix(const QuadForm& form, const Vector& a);

/// Product of reflection vectors lifted into Spin: gp(e_{v_1},...,e_{v_{2k}})
/// divided by a rational square root of prod f(v_i). The vector count must
/// be even and the norm product a square in Q.
SpinElement spin_from_vectors(const QuadForm& form, const std::vector<Vector>& vs);

/// Cartan-Dieudonne: even-length reflection list composing to M, peeling
/// basis vectors in order. Deterministic.
std::vector<Vector> reflection_decompose(const SOMatrix& M);

/// Spinor norm as a squarefree integer square-class representative.
Int spinor_norm(const SOMatrix& M);

/// g in Spin with tau_g(v1) = v2, for f(v1) = f(v2) != 0. Reflection
/// construction plus a bounded spinor-norm repair search inside v2^perp.
SpinElement witt_map(const QuadForm& form, const Vector& v1, const Vector& v2);

/// Coroot h_i(t) over f_s: the rational four-term torus element on blades
/// {1, e1e2, e3e4, e1e2e3e4} (i = 1) or {1, e3e4, e5e6, e3e4e5e6} (i = 2).
SpinElement coroot(int i, const Rational& t, int dim);

/// Root vectors X (i = 1) and Y (i = 2) of the coroot pair.
Multivector root_vector(int i, int dim);

/// Pairing exponent c with h_i(t) X_i h_i(t)^{-1} = t^c X_i. Throws when
/// the conjugate is not proportional to the root vector or no integer
/// exponent matches.
int adjoint_on_root(int i, const Rational& t, int dim);

/// Distance of tau_g from the center {+-I} in operator norm at the real
/// place, for the definite form: min over z in {+-1} of the largest
/// singular value of M - z I. Absolute accuracy ~1e-9.
double separation(const SpinElement& g);

}  // namespace spinlab
