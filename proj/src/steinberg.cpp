#include "spinlab/steinberg.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace spinlab {

ThetaElement::ThetaElement(SOMatrix matrix) : m(std::move(matrix)) {
  if (spinor_norm(m) != 1)
    throw std::invalid_argument("ThetaElement: nontrivial spinor norm, not liftable");
}

SpinElement theta_lift(const ThetaElement& M) {
  return spin_from_vectors(M.m.form, reflection_decompose(M.m));
}

namespace {

bool mat_commute(const Mat& a, const Mat& b) { return mat_mul(a, b) == mat_mul(b, a); }

int commutator_sign(const SpinElement& l1, const SpinElement& l2) {
  Multivector c = gp(gp(l1.mv(), l2.mv()), gp(reverse(l1.mv()), reverse(l2.mv())));
  if (c.is_scalar()) {
    if (c.scalar_part() == 1) return 1;
    if (c.scalar_part() == -1) return -1;
  }
  throw std::logic_error("gen_symbol: commutator of lifts is not a central sign");
}

}  // namespace

int gen_symbol(const ThetaElement& m1, const ThetaElement& m2) {
  if (!mat_commute(m1.m.m, m2.m.m))
    throw std::invalid_argument("gen_symbol: inputs do not commute");
  return commutator_sign(theta_lift(m1), theta_lift(m2));
}

namespace {

Rational rand_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 9);
  long n = num(rng);
  if (n == 0) n = 1;
  Rational r(n, den(rng));
  r.canonicalize();
  return r;
}

Rational rand_nonzero_param(std::mt19937_64& rng) {
  Rational t = rand_rational(rng);
  while (t == 0 || t == 1 || t == -1) t = rand_rational(rng);
  return t;
}

/// Rational plane rotation in coordinates (i, j) of the definite form,
/// realized as the action of the spin element c + s e_i e_j so its spinor
/// norm is trivial; angle parametrized by the Pythagorean triple map.
ThetaElement plane_rotation(const QuadForm& form, int i, int j, const Rational& r) {
  const Rational c = (1 - r * r) / (1 + r * r);
  const Rational s = 2 * r / (1 + r * r);
  Multivector g(form);
  g.add_term(0, c);
  g.add_term((Blade(1) << i) | (Blade(1) << j), s);
  return ThetaElement(SpinElement(std::move(g)).matrix());
}

ThetaElement reflection_pair(const QuadForm& form, int i, int j, const Rational& scale) {
  Vector a(form.dim, Rational(0)), b(form.dim, Rational(0));
  a[i] = scale;
  b[j] = scale;
  Mat m = mat_mul(reflection_matrix(form, a), reflection_matrix(form, b));
  return ThetaElement(SOMatrix(form, std::move(m)));
}

ThetaElement coroot_image(int i, const Rational& t, int dim) {
  return ThetaElement(coroot(i, t, dim).matrix());
}

struct Fail {
  std::string what;
};

void check_pair(const ThetaElement& a, const ThetaElement& b, SymbolReport& rep) {
  const QuadForm& form = a.m.form;
  const ThetaElement id{SOMatrix(form, mat_identity(form.dim))};

  if (gen_symbol(a, id) != 1 || gen_symbol(id, b) != 1) throw Fail{"[g:1] or [1:g] != +1"};
  rep.identity_checks++;

  const int s_ab = gen_symbol(a, b);
  if (gen_symbol(b, a) != s_ab) throw Fail{"antisymmetry violated"};  // inverse in {+-1}
  rep.antisymmetry_checks++;

  // Lift independence: negate either lift, the commutator is unchanged.
  const SpinElement la = theta_lift(a);
  const SpinElement lb = theta_lift(b);
  const SpinElement na(Rational(-1) * la.mv());
  if (commutator_sign(na, lb) != s_ab || commutator_sign(la, lb) != s_ab)
    throw Fail{"lift independence violated"};
  rep.lift_independence_checks++;
}

void check_triple(const ThetaElement& a1, const ThetaElement& a2, const ThetaElement& b,
                  SymbolReport& rep) {
  const ThetaElement prod{SOMatrix(a1.m.form, mat_mul(a1.m.m, a2.m.m))};
  if (gen_symbol(prod, b) != gen_symbol(a1, b) * gen_symbol(a2, b))
    throw Fail{"bimultiplicativity (left) violated"};
  const ThetaElement prod2{SOMatrix(a1.m.form, mat_mul(b.m.m, b.m.m))};
  if (gen_symbol(a1, prod2) != gen_symbol(a1, b) * gen_symbol(a1, b))
    throw Fail{"bimultiplicativity (right) violated"};
  rep.bimultiplicativity_checks++;
}

void check_conjugation(const ThetaElement& a, const ThetaElement& b, const ThetaElement& l,
                       SymbolReport& rep) {
  Mat linv = l.m.m;
  // inverse of an orthogonal matrix for form D: D^-1 M^T D
  const QuadForm& form = l.m.form;
  Mat mt = mat_transpose(l.m.m);
  for (int i = 0; i < form.dim; ++i)
    for (int j = 0; j < form.dim; ++j) linv[i][j] = mt[i][j] * form.diag[j] / form.diag[i];
  auto conj = [&](const ThetaElement& x) {
    return ThetaElement(SOMatrix(form, mat_mul(l.m.m, mat_mul(x.m.m, linv))));
  };
  if (gen_symbol(conj(a), conj(b)) != gen_symbol(a, b)) throw Fail{"conjugation invariance violated"};
  rep.conjugation_checks++;
}

}  // namespace

SymbolReport symbol_property_suite(std::uint64_t seed, int pairs) {
  SymbolReport rep;
  std::mt19937_64 rng(seed);
  const int dim = 6;
  const QuadForm fa = QuadForm::definite(dim);

  try {
    for (int it = 0; it < pairs; ++it) {
      switch (it % 3) {
        case 0: {
          const ThetaElement a = coroot_image(1, rand_nonzero_param(rng), dim);
          const ThetaElement b = coroot_image(2, rand_nonzero_param(rng), dim);
          check_pair(a, b, rep);
          check_triple(a, coroot_image(1, rand_nonzero_param(rng), dim), b, rep);
          check_conjugation(a, b, coroot_image(1, rand_nonzero_param(rng), dim), rep);
          break;
        }
        case 1: {
          const ThetaElement a = plane_rotation(fa, 0, 1, rand_rational(rng));
          const ThetaElement b = plane_rotation(fa, 2, 3, rand_rational(rng));
          check_pair(a, b, rep);
          check_triple(a, plane_rotation(fa, 0, 1, rand_rational(rng)), b, rep);
          check_conjugation(a, b, plane_rotation(fa, 4, 5, rand_rational(rng)), rep);
          break;
        }
        case 2: {
          std::uniform_int_distribution<long> sc(1, 5);
          const Rational scale(sc(rng));
          const ThetaElement a = reflection_pair(fa, 0, 1, scale);
          const ThetaElement b = reflection_pair(fa, 1, 2, scale);
          check_pair(a, b, rep);
          if (gen_symbol(a, b) != -1) throw Fail{"orthogonal reflection pair symbol != -1"};
          rep.reflection_sign_checks++;
          check_conjugation(a, b, plane_rotation(fa, 3, 4, rand_rational(rng)), rep);
          break;
        }
      }
    }
    // Steinberg relation: commuting coroot lifts make [h1(a) : h2(1-a)] trivial.
    for (int it = 0; it < 20; ++it) {
      Rational a = rand_rational(rng);
      while (a == 0 || a == 1 || a == -1 || a == 2 || 1 - a == -1) a = rand_rational(rng);
      const ThetaElement h1 = coroot_image(1, a, dim);
      const ThetaElement h2 = coroot_image(2, 1 - a, dim);
      if (gen_symbol(h1, h2) != 1) throw Fail{"[h1(a):h2(1-a)] != +1"};
      rep.steinberg_relation_checks++;
    }
  } catch (const Fail& f) {
    rep.ok = false;
    rep.counterexample = f.what;
  }
  return rep;
}

}  // namespace spinlab
