#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spinlab/spin.hpp"

using namespace spinlab;

namespace {

Vector random_anisotropic(const QuadForm& form, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  for (;;) {
    Vector v(form.dim);
    for (auto& c : v) c = d(rng);
    if (form.eval(v) != 0) return v;
  }
}

SOMatrix random_rotation(const QuadForm& form, std::mt19937_64& rng, int pairs) {
  Mat m = mat_identity(form.dim);
  for (int i = 0; i < pairs; ++i) {
    m = mat_mul(m, reflection_matrix(form, random_anisotropic(form, rng)));
    m = mat_mul(m, reflection_matrix(form, random_anisotropic(form, rng)));
  }
  return SOMatrix(form, m);
}

}  // namespace

TEST_CASE("matrix helpers") {
  Mat a{{1, 2}, {3, 4}};
  CHECK(mat_det(a) == -2);
  CHECK(mat_mul(a, mat_identity(2)) == a);
  CHECK(mat_vec(a, {1, 1}) == Vector{3, 7});
  CHECK(mat_transpose(a) == Mat{{1, 3}, {2, 4}});
}

TEST_CASE("SOMatrix validation") {
  auto fa = QuadForm::definite(2);
  CHECK_NOTHROW(SOMatrix(fa, {{Rational(3, 5), Rational(-4, 5)},
                              {Rational(4, 5), Rational(3, 5)}}));
  // reflection: orthogonal but det -1
  CHECK_THROWS(SOMatrix(fa, {{1, 0}, {0, -1}}));
  // not orthogonal
  CHECK_THROWS(SOMatrix(fa, {{1, 1}, {0, 1}}));
}

TEST_CASE("is_spin and SpinElement") {
  auto fa = QuadForm::definite(4);
  Multivector rotor(fa, {{0, Rational(3, 5)}, {0b11, Rational(4, 5)}});
  auto chk = is_spin(rotor);
  CHECK(chk.ok);
  REQUIRE(chk.matrix.has_value());
  CHECK(mat_det(chk.matrix->m) == 1);

  // odd grade rejected
  CHECK_FALSE(is_spin(Multivector::basis_blade(fa, 0b1)).ok);
  // even but g g' != 1
  CHECK_FALSE(is_spin(Multivector(fa, {{0, 1}, {0b11, 1}})).ok);
  CHECK_THROWS(SpinElement(Multivector(fa, {{0, 1}, {0b11, 1}})));

  SpinElement g(rotor);
  CHECK(spin_mul(g, g.inverse()).mv() == Multivector::scalar(fa, 1));
}

TEST_CASE("reflections") {
  auto fa = QuadForm::definite(4);
  Mat r = reflection_matrix(fa, {1, 0, 0, 0});
  CHECK(r[0][0] == -1);
  CHECK(r[1][1] == 1);
  CHECK(mat_det(r) == -1);
  CHECK(mat_mul(r, r) == mat_identity(4));

  auto fs = QuadForm::split(4);
  CHECK_THROWS(reflection_matrix(fs, {1, 1, 0, 0}));  // isotropic

  std::mt19937_64 rng(7);
  for (const auto& form : {QuadForm::definite(6), QuadForm::split(6)}) {
    for (int i = 0; i < 25; ++i) {
      Vector a = random_anisotropic(form, rng);
      Mat m = reflection_matrix(form, a);
      Vector neg(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) neg[j] = -a[j];
      CHECK(mat_vec(m, a) == neg);  // tau_a(a) = -a
      CHECK(mat_mul(m, m) == mat_identity(form.dim));
    }
  }
}

TEST_CASE("spin_from_vectors") {
  auto fa = QuadForm::definite(4);
  // tau_{e1} tau_{e2} lifts to e1 e2 (norm product 1)
  Vector v1{1, 0, 0, 0}, v2{0, 1, 0, 0};
  auto g = spin_from_vectors(fa, {v1, v2});
  CHECK(g.mv() == Multivector::basis_blade(fa, 0b11));
  // odd count rejected
  CHECK_THROWS(spin_from_vectors(fa, {v1}));
  // norm product 2: not a rational square
  CHECK_THROWS(spin_from_vectors(fa, {{1, 1, 0, 0}, {0, 1, 0, 0}}));
  // but (1,1,0,0) twice gives product 4
  CHECK_NOTHROW(spin_from_vectors(fa, {{1, 1, 0, 0}, {1, 1, 0, 0}}));
}

TEST_CASE("reflection_decompose reproduces the matrix") {
  std::mt19937_64 rng(31);
  for (const auto& form : {QuadForm::definite(4), QuadForm::split(4),
                           QuadForm::definite(6), QuadForm::split(6)}) {
    for (int i = 0; i < 12; ++i) {
      auto M = random_rotation(form, rng, 2);
      auto refl = reflection_decompose(M);
      CHECK(refl.size() % 2 == 0);
      CHECK(refl.size() <= 2 * static_cast<std::size_t>(form.dim));
      Mat prod = mat_identity(form.dim);
      for (const auto& v : refl) prod = mat_mul(prod, reflection_matrix(form, v));
      CHECK(prod == M.m);
    }
  }
}

TEST_CASE("spinor norm: frozen values") {
  auto fa = QuadForm::definite(4);
  // tau_a tau_b with f(a) = 2, f(b) = 1: class of 2
  Mat m = mat_mul(reflection_matrix(fa, {1, 1, 0, 0}),
                  reflection_matrix(fa, {0, 0, 1, 0}));
  CHECK(spinor_norm(SOMatrix(fa, m)) == 2);
  CHECK(spinor_norm(SOMatrix(fa, mat_identity(4))) == 1);
  // a rotor image always has spinor norm 1
  Multivector rotor(fa, {{0, Rational(3, 5)}, {0b11, Rational(4, 5)}});
  CHECK(spinor_norm(SpinElement(rotor).matrix()) == 1);
}

TEST_CASE("witt_map moves v1 to v2") {
  std::mt19937_64 rng(41);
  for (const auto& form : {QuadForm::definite(6), QuadForm::split(6)}) {
    int done = 0;
    while (done < 20) {
      Vector v1 = random_anisotropic(form, rng);
      // permute coordinates in form-compatible pairs and flip signs to get a
      // second vector of the same norm
      Vector v2 = v1;
      std::uniform_int_distribution<int> coin(0, 1);
      for (int p = 0; p + 1 < form.dim; p += 2) {
        int q = 2 * std::uniform_int_distribution<int>(0, form.dim / 2 - 1)(rng);
        std::swap(v2[p], v2[q]);
        std::swap(v2[p + 1], v2[q + 1]);
      }
      for (auto& c : v2)
        if (coin(rng)) c = -c;
      if (form.eval(v1) != form.eval(v2)) continue;  // split-form swaps can differ
      auto g = witt_map(form, v1, v2);
      CHECK(twisted_action(g.mv(), v1) == v2);
      CHECK(spinor_norm(g.matrix()) == 1);
      ++done;
    }
  }
}

TEST_CASE("coroots: frozen coefficients and homomorphism") {
  CHECK(coroot(1, 1, 6).mv() == Multivector::scalar(QuadForm::split(6), 1));
  auto h = coroot(1, 2, 6);
  auto fs = QuadForm::split(6);
  CHECK(h.mv() == Multivector(fs, {{0, Rational(9, 8)},
                                   {0b0011, Rational(3, 8)},
                                   {0b1100, Rational(-3, 8)},
                                   {0b1111, Rational(-1, 8)}}));
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  for (int i = 1; i <= 2; ++i) {
    for (int trial = 0; trial < 30; ++trial) {
      Rational s(num(rng), den(rng)), t(num(rng), den(rng));
      s.canonicalize();
      t.canonicalize();
      if (s == 0 || t == 0) continue;
      CHECK(spin_mul(coroot(i, s, 6), coroot(i, t, 6)).mv() ==
            coroot(i, s * t, 6).mv());
      CHECK(coroot(i, s, 6).inverse().mv() == coroot(i, 1 / s, 6).mv());
    }
  }
  CHECK_THROWS(coroot(1, 0, 6));
  CHECK_THROWS(coroot(3, 2, 6));
}

TEST_CASE("adjoint pairing on roots") {
  CHECK(adjoint_on_root(1, 2, 6) == 2);
  CHECK(adjoint_on_root(2, 2, 6) == 2);
  CHECK(adjoint_on_root(1, Rational(5, 3), 8) == 2);
  // cross pairing: h1(t) Y h1(t)^{-1} = t^{-1} Y, checked directly
  auto h = coroot(1, 3, 6);
  auto y = root_vector(2, 6);
  auto conj = gp(gp(h.mv(), y), reverse(h.mv()));
  CHECK(conj == Rational(1, 3) * y);
}

TEST_CASE("separation") {
  auto fa = QuadForm::definite(4);
  Multivector rotor(fa, {{0, Rational(3, 5)}, {0b11, Rational(4, 5)}});
  CHECK(separation(SpinElement(rotor)) == doctest::Approx(1.6).epsilon(1e-9));
  CHECK(separation(SpinElement(Multivector::scalar(fa, 1))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(separation(SpinElement(Multivector::scalar(fa, -1))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  auto fs = QuadForm::split(4);
  CHECK_THROWS(separation(SpinElement(Multivector::scalar(fs, 1))));
}
