#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "spinlab/congruence.hpp"

using namespace spinlab;

namespace {

ModMultivector mod_blade(const Int& m, Blade b, const Int& c) {
  ModMultivector out{m, {}};
  Int r = ((c % m) + m) % m;
  if (r != 0) out.terms[b] = r;
  return out;
}

Multivector random_mv(const QuadForm& form, std::mt19937_64& rng) {
  std::uniform_int_distribution<Blade> blade(0, (Blade(1) << form.dim) - 1);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<int> oct(0, 3);
  Multivector out(form);
  for (int i = 0; i < 4; ++i) {
    // denominators restricted to powers of 2, the units of the base ring
    Rational c(num(rng), Int(1) << oct(rng));
    c.canonicalize();
    out.add_term(blade(rng), c);
  }
  return out;
}

}  // namespace

TEST_CASE("reduce_mod basics") {
  auto fa = QuadForm::definite(4);
  Multivector x(fa, {{0, Rational(1, 4)}, {0b11, Rational(3)}, {0b1100, Rational(-1, 2)}});
  auto r = reduce_mod(x, 3);
  // 1/4 = 1 (mod 3), 3 = 0 (dropped), -1/2 = 1 (mod 3)
  CHECK(r.terms == std::map<Blade, Int>{{0, 1}, {0b1100, 1}});
  CHECK_THROWS(reduce_mod(x, 6));  // even modulus
  CHECK_THROWS(reduce_mod(Multivector(fa, {{0, Rational(1, 3)}}), 3));
}

TEST_CASE("reduce_mod is a ring homomorphism") {
  std::mt19937_64 rng(53);
  for (const auto& form : {QuadForm::definite(4), QuadForm::split(4)}) {
    for (const long m : {3L, 5L, 7L, 9L}) {
      for (int i = 0; i < 25; ++i) {
        auto x = random_mv(form, rng);
        auto y = random_mv(form, rng);
        CHECK(gp_mod(form, reduce_mod(x, m), reduce_mod(y, m)) ==
              reduce_mod(gp(x, y), m));
        CHECK(reverse_mod(reduce_mod(x, m)) == reduce_mod(reverse(x), m));
      }
    }
  }
}

TEST_CASE("congruence subgroup membership") {
  auto fa = QuadForm::definite(4);
  // c + s e12 with c = -4/5, s = 3/5: c = 1, s = 0 (mod 3), so the element
  // is in the level-3 subgroup but not level 9 (s = 6 mod 9).
  Multivector g(fa, {{0, Rational(-4, 5)}, {0b11, Rational(3, 5)}});
  SpinElement sp(g);
  CHECK(in_congruence_subgroup(sp, OIdeal(3)));
  CHECK_FALSE(in_congruence_subgroup(sp, OIdeal(9)));
  CHECK(in_congruence_subgroup(sp, OIdeal(1)));
  SpinElement minus(Multivector::scalar(fa, -1));
  CHECK_FALSE(in_congruence_subgroup(minus, OIdeal(3)));
  CHECK(in_congruence_subgroup(minus, OIdeal(1)));
  // filtration: level 9 implies level 3
  Multivector h(fa, {{0, Rational(-40, 41)}, {0b11, Rational(9, 41)}});
  SpinElement sph(h);
  CHECK(in_congruence_subgroup(sph, OIdeal(9)));
  CHECK(in_congruence_subgroup(sph, OIdeal(3)));
}

TEST_CASE("mod-m spin membership and action matrices") {
  auto fs = QuadForm::split(4);
  // identity and -1
  CHECK(is_spin_mod(fs, mod_blade(3, 0, 1)));
  CHECK(is_spin_mod(fs, mod_blade(3, 0, -1)));
  // e13 has f-norm +1 over the split form: a mod-3 spin element
  auto e13 = mod_blade(3, 0b101, 1);
  CHECK(is_spin_mod(fs, e13));
  // e12 has norm -(-1)(+1) d1 d2 = -1 != 1: rejected
  CHECK_FALSE(is_spin_mod(fs, mod_blade(3, 0b11, 1)));
  // odd grade rejected
  CHECK_FALSE(is_spin_mod(fs, mod_blade(3, 0b1, 1)));

  auto m = action_matrix_mod(fs, e13);
  // tau_{e13} negates coordinates 0 and 2 mod 3
  CHECK(m[0][0] == 2);
  CHECK(m[1][1] == 1);
  CHECK(m[2][2] == 2);
  CHECK(m[3][3] == 1);
  CHECK_THROWS(action_matrix_mod(fs, mod_blade(3, 0b11, 1)));

  // reduction of a rational spin element is a mod spin element with the
  // reduced action matrix
  auto fa = QuadForm::definite(4);
  Multivector g(fa, {{0, Rational(3, 5)}, {0b11, Rational(4, 5)}});
  SpinElement sp(g);
  for (const long mod : {3L, 7L, 11L}) {
    auto gm = reduce_mod(g, mod);
    CHECK(is_spin_mod(fa, gm));
    auto am = action_matrix_mod(fa, gm);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        auto e = rational_mod(sp.matrix().m[r][c], mod);
        REQUIRE(e.has_value());
        CHECK(am[r][c] == *e);
      }
  }
}

TEST_CASE("full enumeration of the dim-4 split quotient mod 3") {
  auto fs = QuadForm::split(4);
  auto all = enumerate_spin_mod(fs, 3);
  CHECK(all.size() == 576);  // |SL2(F3)|^2 via the exceptional isogeny
  // distinct action matrices: quotient by the center {+-1}
  std::set<std::string> keys;
  for (const auto& x : all) {
    std::string k;
    for (const auto& row : action_matrix_mod(fs, x))
      for (const auto& e : row) k += e.get_str() + ",";
    keys.insert(k);
  }
  CHECK(keys.size() == 288);
  CHECK_THROWS(enumerate_spin_mod(fs, 3, 10));  // cap
}

TEST_CASE("generators reach the whole quotient") {
  auto fs = QuadForm::split(4);
  auto spec = spin_quotient_generators(fs, 3);
  auto rep = gcl_width_bfs(spec, mod_blade(3, 0, 1), 4);
  CHECK(rep.group_order == 288);  // action-matrix classes
  CHECK(rep.width == 0);          // identity class
}

TEST_CASE("isometry between the definite and split forms mod p^k") {
  for (const long p : {3L, 5L, 7L, 11L}) {
    for (int k = 1; k <= 3; ++k) {
      for (int dim : {4, 8, 20}) {
        auto fa = QuadForm::definite(dim);
        auto fs = QuadForm::split(dim);
        auto M = isometry_mod(p, k, dim);
        Int pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        // M^T diag(fa) M = diag(fs) (mod p^k)
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            Int s = 0;
            for (int r = 0; r < dim; ++r)
              s += M[r][i] * Int(fa.diag[r].get_num()) * M[r][j];
            Int want = (i == j) ? Int(fs.diag[i].get_num()) : Int(0);
            CHECK(((s - want) % pk + pk) % pk == 0);
          }
      }
    }
  }
  // p = 3 (3 mod 4) with dim not divisible by 4: determinants differ
  CHECK_THROWS(isometry_mod(3, 1, 2));
  CHECK_THROWS(isometry_mod(7, 2, 2));
  // p = 1 (mod 4): all even dims work
  CHECK_NOTHROW(isometry_mod(5, 2, 2));
  CHECK_NOTHROW(isometry_mod(13, 1, 6));
}

TEST_CASE("width BFS: frozen values for the mod-3 split quotient") {
  auto fs = QuadForm::split(4);
  auto spec = spin_quotient_generators(fs, 3);

  // e13: a half-turn class; frozen from full enumeration
  auto rep = gcl_width_bfs(spec, mod_blade(3, 0b101, 1), 10);
  CHECK(rep.mode == "exact");
  CHECK(rep.group_order == 288);
  CHECK(rep.class_size == 19);
  CHECK(rep.subgroup_order == 32);
  CHECK(rep.width == 2);
  CHECK(rep.width_with_center == 2);
  CHECK_FALSE(rep.cap_exceeded);

  // cap smaller than the width
  auto capped = gcl_width_bfs(spec, mod_blade(3, 0b101, 1), 1);
  CHECK(capped.cap_exceeded);
  CHECK(capped.width == -1);

  // -1 is central: class {1, -1}, width from the class itself
  auto center = gcl_width_bfs(spec, mod_blade(3, 0, -1), 4);
  CHECK(center.width == 0);  // acts trivially: identity in the action quotient
  CHECK(center.width_with_center >= 0);
}

TEST_CASE("sl3 elementary commutator identity") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> d(0, 80);
  for (int i = 0; i < 200; ++i) {
    CHECK(sl3_commutator_identity(d(rng), d(rng), 81));
    CHECK(sl3_commutator_identity(d(rng) % 7, d(rng) % 7, 7));
  }
}
