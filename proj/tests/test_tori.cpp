#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spinlab/tori.hpp"

using namespace spinlab;

namespace {

TorusElem random_point(const Int& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 20);
  for (;;) {
    Rational u(num(rng), den(rng));
    u.canonicalize();
    if (1 + t * u * u != 0) return conic_point(t, u);
  }
}

}  // namespace

TEST_CASE("torus element validation and group laws") {
  // gamma = (3/4, 1/4) on x^2 + 7 y^2 = 1
  TorusElem g(7, Rational(3, 4), Rational(1, 4));
  CHECK_THROWS(TorusElem(7, Rational(1, 2), Rational(1, 2)));

  auto g2 = torus_mul(g, g);
  CHECK(g2.x == Rational(1, 8));
  CHECK(g2.y == Rational(3, 8));
  CHECK(torus_mul(g, torus_inv(g)) == torus_identity(7));

  std::mt19937_64 rng(19);
  for (const long t : {7L, 5L, 1L, 11L}) {
    for (int i = 0; i < 40; ++i) {
      auto a = random_point(t, rng);
      auto b = random_point(t, rng);
      auto c = random_point(t, rng);
      CHECK(torus_mul(torus_mul(a, b), c) == torus_mul(a, torus_mul(b, c)));
      CHECK(torus_mul(a, b) == torus_mul(b, a));
      CHECK(torus_mul(a, torus_inv(a)) == torus_identity(t));
      CHECK(torus_inv(torus_mul(a, b)) == torus_mul(torus_inv(a), torus_inv(b)));
    }
  }
}

TEST_CASE("conic parametrization") {
  CHECK(conic_point(7, 0) == torus_identity(7));
  auto z = conic_point(7, Rational(1, 3));
  CHECK(z.x == Rational(1, 8));
  CHECK(z.y == Rational(3, 8));
  CHECK_THROWS(conic_point(-4, Rational(1, 2)));  // 1 + t u^2 = 0
}

TEST_CASE("trivializations at split, inert, and ramified primes") {
  // t = 7: -7 is a square mod 11 (2^2 = 4, ..., 11 | 2^2+7)
  auto tr = trivialize(7, 11, 1);
  REQUIRE(tr.has_value());
  CHECK(tr->zeta == 2);
  CHECK((tr->zeta * tr->zeta + 7) % 11 == 0);

  CHECK_FALSE(trivialize(7, 3, 1).has_value());  // -7 = 2 not a square mod 3
  CHECK_FALSE(trivialize(7, 7, 1).has_value());  // ramified
  CHECK_THROWS(trivialize(7, 2, 1));
  CHECK_THROWS(trivialize(7, 15, 1));

  // precision tower: zeta at level k reduces to zeta at lower levels
  for (int k = 1; k <= 5; ++k) {
    auto a = trivialize(7, 11, k);
    auto b = trivialize(7, 11, k + 1);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= 11;
    CHECK((b->zeta - a->zeta) % pk == 0);
    CHECK((a->zeta * a->zeta + 7) % pk == 0);
  }
}

TEST_CASE("rho embedding") {
  TorusElem g(7, Rational(3, 4), Rational(1, 4));
  auto tr = trivialize(7, 11, 1);
  REQUIRE(tr.has_value());
  CHECK(rho_apply(g, *tr) == 4);  // (3 + 2)/4 = 5 * 3 = 15 = 4 (mod 11)
  CHECK(rho_apply(torus_mul(g, g), *tr) == 5);  // 4^2 = 16 = 5
  CHECK(rho_apply(torus_identity(7), *tr) == 1);

  // rho is multiplicative at several precisions
  std::mt19937_64 rng(29);
  for (int k = 1; k <= 3; ++k) {
    auto trk = trivialize(7, 11, k);
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= 11;
    int done = 0;
    while (done < 25) {
      auto a = random_point(7, rng);
      auto b = random_point(7, rng);
      if (torus_val(a, 11) < 0 || torus_val(b, 11) < 0) continue;
      CHECK(rho_apply(torus_mul(a, b), *trk) ==
            rho_apply(a, *trk) * rho_apply(b, *trk) % pk);
      ++done;
    }
  }

  // non-integral point rejected
  TorusElem bad(7, Rational(-87, 88), Rational(5, 88));
  CHECK_THROWS(rho_apply(bad, *tr));
}

TEST_CASE("torus valuation") {
  TorusElem g(7, Rational(3, 4), Rational(1, 4));
  auto g2 = torus_mul(g, g);
  // denominators are powers of 2, invertible in Z[1/2]: val 0 at odd primes
  CHECK(torus_val(g, 11) == 0);
  CHECK(torus_val(g2, 23) == 0);
  // (-87/88, 9/88): 11 divides the denominator, split for t = 7
  TorusElem w(7, Rational(-87, 88), Rational(5, 88));
  CHECK(torus_val(w, 11) == -1);
  CHECK(torus_val(w, 3) == 0);  // inert
  CHECK(torus_val(w, 7) == 0);  // ramified

  // val(z1 z2) >= min(val z1, val z2); val(z^-1) = val(z)
  std::mt19937_64 rng(37);
  for (int i = 0; i < 40; ++i) {
    auto a = random_point(7, rng);
    auto b = random_point(7, rng);
    for (const long p : {11L, 23L, 29L}) {
      long va = torus_val(a, p), vb = torus_val(b, p);
      CHECK(torus_val(torus_mul(a, b), p) >= va + vb);
      CHECK(torus_val(torus_inv(a), p) == va);
    }
  }
}

TEST_CASE("weak approximation: single constraint") {
  auto res = weak_approx_torus(7, {{11, 4, 2}});
  auto tr = trivialize(7, 11, 2);
  REQUIRE(tr.has_value());
  CHECK(rho_apply(res.z, *tr) % 121 == 4 % 121);
  CHECK(conic_point(7, res.u) == res.z);
  for (const auto& q : res.support) CHECK(torus_val(res.z, q) < 0);
}

TEST_CASE("weak approximation: two constraints and avoidance") {
  std::vector<TorusConstraint> cs{{11, 4, 1}, {23, 10, 1}};
  auto res = weak_approx_torus(7, cs, {29});
  auto t11 = trivialize(7, 11, 1);
  auto t23 = trivialize(7, 23, 1);
  CHECK(rho_apply(res.z, *t11) == 4);
  CHECK(rho_apply(res.z, *t23) == 10);
  CHECK(torus_val(res.z, 29) == 0);
  for (const auto& q : res.support) {
    CHECK(torus_val(res.z, q) < 0);
    CHECK(q != 29);
  }
}

TEST_CASE("weak approximation: target congruent to -1 is perturbed") {
  auto res = weak_approx_torus(7, {{11, 10, 1}});  // 10 = -1 (mod 11)
  auto tr = trivialize(7, 11, 1);
  CHECK(rho_apply(res.z, *tr) == 10);
}

TEST_CASE("weak approximation: rejects bad inputs") {
  CHECK_THROWS(weak_approx_torus(7, {{3, 1, 1}}));   // inert prime
  CHECK_THROWS(weak_approx_torus(7, {{11, 0, 1}}));  // target not a unit
}

TEST_CASE("weak approximation: randomized targets verify") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> a11(1, 10), a23(1, 22);
  for (int i = 0; i < 8; ++i) {
    Int c1 = a11(rng), c2 = a23(rng);
    auto res = weak_approx_torus(7, {{11, c1, 1}, {23, c2, 1}});
    auto t11 = trivialize(7, 11, 1);
    auto t23 = trivialize(7, 23, 1);
    CHECK(rho_apply(res.z, *t11) == c1);
    CHECK(rho_apply(res.z, *t23) == c2);
  }
}
