#include "spinlab/tori.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spinlab {

TorusElem::TorusElem(Int t_, Rational x_, Rational y_)
    : t(std::move(t_)), x(std::move(x_)), y(std::move(y_)) {
  if (t <= 0) throw std::invalid_argument("TorusElem: t must be positive");
  if (x * x + t * y * y != 1) throw std::invalid_argument("TorusElem: x^2 + t y^2 != 1");
}

TorusElem torus_identity(const Int& t) { return TorusElem(t, 1, 0); }

TorusElem torus_mul(const TorusElem& z1, const TorusElem& z2) {
  if (z1.t != z2.t) throw std::invalid_argument("torus_mul: mismatched parameters");
  return TorusElem(z1.t, z1.x * z2.x - z1.t * z1.y * z2.y, z1.x * z2.y + z2.x * z1.y);
}

TorusElem torus_inv(const TorusElem& z) { return TorusElem(z.t, z.x, -z.y); }

std::optional<Trivialization> trivialize(const Int& t, const Int& p, int k) {
  if (p == 2) throw std::invalid_argument("trivialize: 2 is invertible in the base ring");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("trivialize: p must be an odd prime");
  if (k < 1) throw std::invalid_argument("trivialize: precision must be positive");
  if (t % p == 0) return std::nullopt;  // ramified
  Int pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  Int a = ((-t) % pk + pk) % pk;
  auto zeta = sqrt_mod(a, OddPrime{p}, static_cast<unsigned>(k));
  if (!zeta) return std::nullopt;  // inert
  // Pick the lift of the smaller mod-p root so trivializations at different
  // precisions describe the same embedding.
  Int z = *zeta;
  if (z % p > p / 2) z = pk - z;
  return Trivialization{t, p, k, z};
}

namespace {

Int pow_int(const Int& p, int k) {
  Int out = 1;
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

}  // namespace

Int rho_apply(const TorusElem& z, const Trivialization& triv) {
  if (z.t != triv.t) throw std::invalid_argument("rho_apply: mismatched parameters");
  const Int pk = pow_int(triv.p, triv.k);
  auto xm = rational_mod(z.x, pk);
  auto ym = rational_mod(z.y, pk);
  if (!xm || !ym) {
    std::ostringstream os;
    os << "rho_apply: non-integral at " << triv.p << " (torus_val = " << torus_val(z, triv.p)
       << ")";
    throw std::domain_error(os.str());
  }
  return ((*xm + *ym * triv.zeta) % pk + pk) % pk;
}

long torus_val(const TorusElem& z, const Int& p) {
  if (p == 2 || p < 3 || !is_prime(p))
    throw std::invalid_argument("torus_val: p must be an odd prime");
  if (z.t % p == 0) return 0;  // ramified
  Int mp = ((-z.t) % p + p) % p;
  if (mp != 0 && legendre(mp, p) != 1) return 0;  // inert
  // Split: clear denominators, z = (a + b zeta)/d with d the lcm denominator.
  Int d = lcm(Int(z.x.get_den()), Int(z.y.get_den()));
  Int a = Int(Rational(z.x * d).get_num());
  Int b = Int(Rational(z.y * d).get_num());
  const long e = val_int(d, p);
  const int k = static_cast<int>(2 * e + 1);
  auto triv = trivialize(z.t, p, k);
  const Int pk = pow_int(p, k);
  Int res = ((a + b * triv->zeta) % pk + pk) % pk;
  if (res == 0) throw std::logic_error("torus_val: precision exhausted");
  const long v = val_int(res, p) - e;
  return std::min(v, -v);
}

TorusElem conic_point(const Int& t, const Rational& u) {
  Rational denom = 1 + t * u * u;
  if (denom == 0) throw std::invalid_argument("conic_point: 1 + t u^2 = 0");
  return TorusElem(t, (1 - t * u * u) / denom, 2 * u / denom);
}

WeakApproxResult weak_approx_torus(const Int& t, const std::vector<TorusConstraint>& constraints,
                                   const std::vector<Int>& avoid) {
  struct Local {
    Int p;
    int m;
    long s;  // denominator exponent of the p-adic conic parameter
    Int w;   // parameter numerator residue
    Trivialization triv;  // at the requested precision, for final checks
  };
  std::vector<Local> locals;
  Int D = 1;
  for (const auto& c : constraints) {
    if (c.m < 1) throw std::invalid_argument("weak_approx_torus: precision must be positive");
    if (c.a % c.p == 0)
      throw std::invalid_argument("weak_approx_torus: target is not a unit at its prime");
    for (const auto& prev : locals)
      if (prev.p == c.p) throw std::invalid_argument("weak_approx_torus: duplicate prime");
    const Int pm = pow_int(c.p, c.m);
    Int a = ((c.a % pm) + pm) % pm;
    // Dodge the excluded point (-1, 0): a target lift too close to -1 makes
    // the conic parameter blow up, but any lift off -1 by a controlled
    // valuation works. Adding p^m preserves the constraint and caps
    // val(a + 1) at m within p steps.
    while (val_int(a + 1, c.p) > 2 * c.m + 2) a += pm;
    const long s = ((a + 1) % c.p == 0) ? val_int(a + 1, c.p) : 0;
    const int bigk = static_cast<int>(c.m + 2 * s + 2);
    auto triv_big = trivialize(t, c.p, bigk);
    if (!triv_big)
      throw std::invalid_argument("weak_approx_torus: prime is not split for this t");
    const Int pK = pow_int(c.p, bigk);
    // Solve rho(conic(u)) = a: u = (a - 1) / (zeta (a + 1)) in Q_p.
    Int num = (((a - 1) % pK) + pK) % pK;
    Int den = ((triv_big->zeta * (a + 1)) % pK + pK) % pK;
    const Int ps = pow_int(c.p, static_cast<int>(s));
    den /= ps;  // unit now
    const Int wmod = pK / ps;
    const Int w = (num * inv_mod(den, wmod)) % wmod;
    auto triv_m = trivialize(t, c.p, c.m);
    locals.push_back({c.p, c.m, s, w, *triv_m});
    D *= ps;
  }

  // CRT on the numerator n of u = n/D.
  std::vector<std::pair<Int, Int>> congruences;
  for (const auto& l : locals) {
    const Int mod = pow_int(l.p, l.m + 1);
    const Int dp = D / pow_int(l.p, static_cast<int>(l.s));
    congruences.emplace_back(((l.w * dp) % mod + mod) % mod, mod);
  }
  for (const Int& q : avoid) {
    if (q == 2 || q % 2 == 0) continue;
    bool taken = false;
    for (const auto& l : locals)
      if (l.p == q) taken = true;
    if (taken || t % q == 0) continue;
    Int mq = ((-t) % q + q) % q;
    if (legendre(mq, q) != 1) continue;  // z automatic integral at inert q
    // bad residues: n = +- D zeta / t (mod q) make 1 + t u^2 vanish
    auto trq = trivialize(t, q, 1);
    Int tq = ((t % q) + q) % q;
    Int bad1 = (D % q * trq->zeta % q * inv_mod(tq, q)) % q;
    Int bad2 = (q - bad1) % q;
    Int r = 0;
    while (r == bad1 || r == bad2) ++r;
    congruences.emplace_back(r, q);
  }
  const Int n = congruences.empty() ? Int(0) : crt(congruences);
  Rational u(n, D);
  u.canonicalize();

  WeakApproxResult out{conic_point(t, u), u, {}, {}};
  // Re-verify every requested congruence exactly.
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Int got = rho_apply(out.z, locals[i].triv);
    const Int pm = pow_int(constraints[i].p, constraints[i].m);
    const Int want = ((constraints[i].a % pm) + pm) % pm;
    if (got != want) {
      std::ostringstream os;
      os << "weak_approx_torus: verification failed at " << constraints[i].p << ": got " << got
         << ", want " << want;
      throw std::logic_error(os.str());
    }
    out.trivs.push_back(locals[i].triv);
  }
  // Support: odd primes of the denominators with negative torus valuation.
  Int dens = odd_part(lcm(Int(out.z.x.get_den()), Int(out.z.y.get_den())));
  for (const auto& [q, mult] : factor(dens)) {
    if (torus_val(out.z, q) < 0) out.support.push_back(q);
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

}  // namespace spinlab
