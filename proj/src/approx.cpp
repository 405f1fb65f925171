#include "spinlab/approx.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spinlab {

namespace {

Int pow_int(const Int& p, long k) {
  Int out = 1;
  for (long i = 0; i < k; ++i) out *= p;
  return out;
}

Int norm_mod(const Int& a, const Int& m) { return (a % m + m) % m; }

}  // namespace

int foya_search(const Int& x, int m, const std::vector<Int>& s_list, int cap) {
  if (m < 1) throw std::invalid_argument("foya_search: m must be positive");
  for (const Int& s : s_list)
    if (s >= 0 && is_perfect_square(s))
      throw std::invalid_argument("foya_search: list entries must be non-squares");
  for (int k = 1; k <= cap; ++k) {
    const Int t = pow_int(2, 2L * m * k) - x;
    if (t <= 0) continue;
    if (is_perfect_square(t)) continue;
    bool ok = true;
    for (const Int& s : s_list) {
      const Int prod = -s * t;
      if (prod >= 0 && is_perfect_square(prod)) {
        ok = false;
        break;
      }
    }
    if (ok) return k;
  }
  throw std::domain_error("foya_search: cap exceeded");
}

namespace {

/// Record one congruence with its independent re-check data; throws if the
/// claimed congruence does not actually hold.
CongruenceRecord make_record(int which, const TorusElem& z, const Int& p, int k,
                             const Int& zeta, const Rational& target) {
  const Int pk = pow_int(p, k);
  if (norm_mod(zeta * zeta + z.t, pk) != 0)
    throw std::logic_error("certificate: zeta^2 != -t");
  auto x = rational_mod(z.x, pk);
  auto y = rational_mod(z.y, pk);
  auto rhs = rational_mod(target, pk);
  if (!x || !y || !rhs) throw std::logic_error("certificate: non-integral data");
  const Int lhs = norm_mod(*x + *y * zeta, pk);
  if (lhs != *rhs) throw std::logic_error("certificate: congruence fails");
  return CongruenceRecord{which, p, k, norm_mod(zeta, pk), lhs, *rhs};
}

std::vector<Int> support_of(const TorusElem& z) {
  std::vector<Int> out;
  const Int dens = odd_part(lcm(Int(z.x.get_den()), Int(z.y.get_den())));
  for (const auto& [q, mult] : factor(dens))
    if (torus_val(z, q) < 0) out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ApproxCertificate approx_unit(const Rational& a, const OIdeal& I) {
  if (a == 0) throw std::invalid_argument("approx_unit: a must be non-zero");
  const auto primes = ideal_primes(I);
  for (const auto& P : primes)
    if (val(a, P).v != 0)
      throw std::invalid_argument("approx_unit: a is not a unit at a prime of I");

  ApproxCertificate cert;
  cert.inputs = {a};
  cert.I = I;

  if (a == 1 || a == -1) {
    // Shortcut branch: z = a itself; t = -1 mod I keeps every prime split.
    Int t = I.m - 1;
    if (t <= 0) t = 2;
    cert.t = t;
    cert.zs.emplace_back(t, a, Rational(0));
    for (const auto& P : primes) {
      const int v = static_cast<int>(val_int(I.m, P.p));
      auto zeta = sqrt_mod(norm_mod(-t, pow_int(P.p, v)), P, static_cast<unsigned>(v));
      cert.congruences.push_back(make_record(0, cert.zs[0], P.p, v, *zeta, a));
    }
    cert.supports.push_back({});
    return cert;
  }

  // x = 2^k (a + a^-1)/2 and zeta_p = 2^k (a - a^-1)/2 modulo high powers;
  // then t = 2^{2k} - x^2 satisfies zeta_p^2 = -t automatically and
  // z = (x/2^k, 1/2^k) lands in T_t(O) with rho_p(z) = a.
  const Rational xr = (a + 1 / a) / 2;
  const Rational yr = (a - 1 / a) / 2;
  std::vector<std::pair<Int, Int>> congruences;  // for CRT on x
  std::vector<std::pair<Int, int>> precisions;   // (p, C_p)
  Int N = 1;
  for (const auto& P : primes) {
    const int v = static_cast<int>(val_int(I.m, P.p));
    const long mp = val(yr, P).v;  // finite: a != +-1
    const int C = static_cast<int>(v + 2 * mp + 1);
    precisions.emplace_back(P.p, C);
    N *= pow_int(P.p, C);
  }
  for (int k = 1;; ++k) {
    const Int two_k = pow_int(2, k);
    // x = 2^k xr (mod N), centered representative
    Int x = 0;
    {
      std::vector<std::pair<Int, Int>> parts;
      for (const auto& [p, C] : precisions) {
        const Int pc = pow_int(p, C);
        auto r = rational_mod(two_k * xr, pc);
        parts.emplace_back(*r, pc);
      }
      x = parts.size() == 1 ? parts[0].first : crt(parts);
    }
    if (2 * x > N) x -= N;
    const Int t = two_k * two_k - x * x;
    if (t <= 0) continue;
    cert.t = t;
    cert.zs.emplace_back(t, Rational(x) / two_k, Rational(1) / two_k);
    for (const auto& [p, C] : precisions) {
      const Int pc = pow_int(p, C);
      const Int zeta = *rational_mod(two_k * yr, pc);
      cert.congruences.push_back(make_record(0, cert.zs[0], p, C, zeta, a));
    }
    cert.supports.push_back(support_of(cert.zs[0]));
    return cert;
  }
}

ApproxCertificate approx_pair(const Rational& a1, const Rational& a2, const OIdeal& I) {
  if (a1 == 0 || a2 == 0) throw std::invalid_argument("approx_pair: inputs must be non-zero");
  const auto primes = ideal_primes(I);
  for (const auto& P : primes)
    if (val(a1, P).v != 0 || val(a2, P).v != 0)
      throw std::invalid_argument("approx_pair: input is not a unit at a prime of I");

  ApproxCertificate cert;
  cert.inputs = {a1, a2};
  cert.I = I;
  // t = -1 (mod I), positive, prime to I: every prime of I splits.
  Int t = I.m == 1 ? Int(7) : I.m - 1;
  while (t <= 1 || gcd(t, I.m) != 1) t += I.m;
  cert.t = t;

  auto constraints_for = [&](const Rational& a) {
    std::vector<TorusConstraint> cs;
    for (const auto& P : primes) {
      const int v = static_cast<int>(val_int(I.m, P.p));
      const Int pv = pow_int(P.p, v);
      auto target = rational_mod(a, pv);
      cs.push_back({P.p, *target, v});
    }
    return cs;
  };

  const WeakApproxResult r1 =
      I.m == 1 ? WeakApproxResult{torus_identity(t), 0, {}, {}}
               : weak_approx_torus(t, constraints_for(a1));
  std::vector<Int> avoid = r1.support;
  const WeakApproxResult r2 =
      I.m == 1 ? WeakApproxResult{torus_identity(t), 0, {}, {}}
               : weak_approx_torus(t, constraints_for(a2), avoid);
  cert.zs.push_back(r1.z);
  cert.zs.push_back(r2.z);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& P = primes[i];
    const int v = static_cast<int>(val_int(I.m, P.p));
    cert.congruences.push_back(make_record(0, r1.z, P.p, v, r1.trivs[i].zeta, a1));
    cert.congruences.push_back(make_record(1, r2.z, P.p, v, r2.trivs[i].zeta, a2));
  }
  cert.supports.push_back(r1.support);
  cert.supports.push_back(r2.support);
  for (const Int& q : r1.support)
    for (const Int& q2 : r2.support)
      if (q == q2) throw std::logic_error("approx_pair: supports are not disjoint");
  return cert;
}

namespace {

Multivector torus_factor(const QuadForm& form, const Rational& x, const Rational& y,
                         const Int& t, const Multivector& b1, const Multivector& b2) {
  Multivector g = Multivector::scalar(form, (1 + x) / 2);
  g = g + Rational(y / 2) * b1 + Rational(-y / 2) * b2 +
      Rational(-(1 - x) / (2 * t)) * gp(b1, b2);
  return g;
}

}  // namespace

SpinPair torus_to_spin(const Int& t, const TorusElem& z1, const TorusElem& z2, int dim) {
  if (dim < 20) throw std::invalid_argument("torus_to_spin: dimension must be at least 20");
  if (z1.t != t || z2.t != t) throw std::invalid_argument("torus_to_spin: parameter mismatch");
  const QuadForm form = QuadForm::definite(dim);
  const auto sq = four_squares(t);

  std::vector<Vector> vs, us;
  for (int i = 0; i < 3; ++i) {
    Vector v(dim, Rational(0));
    v[i] = 1;
    vs.push_back(std::move(v));
    Vector u(dim, Rational(0));
    for (int j = 0; j < 4; ++j) u[4 + 4 * i + j] = Rational(sq[j]);
    us.push_back(std::move(u));
  }
  std::vector<Multivector> planes;  // V_i U_i, pairwise commuting bivector blocks
  for (int i = 0; i < 3; ++i)
    planes.push_back(gp(embed_vector(form, vs[i]), embed_vector(form, us[i])));

  SpinElement g1(torus_factor(form, z1.x, z1.y, t, planes[0], planes[1]));
  SpinElement g2(torus_factor(form, z2.x, z2.y, t, planes[1], planes[2]));
  Multivector comm = gp(g1.mv(), g2.mv()) + Rational(-1) * gp(g2.mv(), g1.mv());
  if (!comm.is_zero()) throw std::logic_error("torus_to_spin: pair does not commute");
  return SpinPair{std::move(g1), std::move(g2), t, std::move(vs), std::move(us)};
}

std::vector<Int> find_primes_legendre(const std::vector<PrimeCond>& conds, int count, Int cap) {
  std::vector<Int> out;
  for (Int p = 3; p <= cap && static_cast<int>(out.size()) < count; p += 2) {
    if (!is_prime(p)) continue;
    bool ok = true;
    for (const auto& c : conds) {
      if (c.kind == PrimeCond::Residue) {
        if (norm_mod(p - c.a, c.m) != 0) ok = false;
      } else {
        const Int r = norm_mod(c.a, p);
        if (r == 0 || legendre(r, p) != c.m) ok = false;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(p);
  }
  if (static_cast<int>(out.size()) < count)
    throw std::domain_error("find_primes_legendre: scan cap exceeded");
  return out;
}

long class_number(const Int& D) {
  if (D >= 0 || (norm_mod(D, 4) != 0 && norm_mod(D, 4) != 1))
    throw std::invalid_argument("class_number: need D < 0, D = 0 or 1 (mod 4)");
  long h = 0;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a; b <= a; ++b) {
      if (norm_mod(b - D, 2) != 0) continue;  // b and D share parity
      const Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const Int c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (-b == a || a == c)) continue;  // normalized twin
      if (gcd(gcd(a, b), c) != 1) continue;        // imprimitive
      ++h;
    }
  }
  return h;
}

std::optional<std::pair<Int, Int>> principal_witness(const Int& t, const Int& p) {
  if (t <= 0) throw std::invalid_argument("principal_witness: t must be positive");
  if (p < 3 || !is_prime(p) || legendre(norm_mod(-t, p), p) != 1)
    throw std::invalid_argument("principal_witness: p must be an odd split prime");
  if (norm_mod(t, 4) == 3) {
    // x^2 + xy + (1+t)/4 y^2 = p; solve 4p - t y^2 = s^2, x = (-y + s)/2.
    for (Int y = 0; t * y * y <= 4 * p; ++y) {
      const Int rem = 4 * p - t * y * y;
      if (!is_perfect_square(rem)) continue;
      Int s;
      mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
      if (norm_mod(s - y, 2) != 0) continue;  // parity of x
      for (const Int& x : {Int((-y + s) / 2), Int((-y - s) / 2)}) {
        const Int c = (1 + t) / 4;
        if (x * x + x * y + c * y * y == p) return std::make_pair(x, y);
      }
    }
    return std::nullopt;
  }
  for (Int y = 0; t * y * y <= p; ++y) {
    const Int rem = p - t * y * y;
    if (!is_perfect_square(rem)) continue;
    Int x;
    mpz_sqrt(x.get_mpz_t(), rem.get_mpz_t());
    return std::make_pair(x, y);
  }
  return std::nullopt;
}

}  // namespace spinlab
