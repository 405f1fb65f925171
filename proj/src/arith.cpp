#include "spinlab/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinlab {

OIdeal::OIdeal(Int gen) : m(std::move(gen)) {
  if (m <= 0 || mpz_even_p(m.get_mpz_t()))
    throw std::invalid_argument("OIdeal generator must be a positive odd integer");
}

OddPrime::OddPrime(Int prime) : p(std::move(prime)) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument("OddPrime requires an odd prime >= 3");
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // 50 rounds of Miller-Rabin; mpz_probab_prime_p is deterministic below 2^64.
  return mpz_probab_prime_p(n.get_mpz_t(), 50) > 0;
}

namespace {

Int pollard_rho(const Int& n) {
  // Brent's variant; n is odd, composite, not a prime power of small primes.
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    Int diff;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 0 && d != 1 && d != n) return d;
  }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<Int, unsigned> factor(Int n) {
  if (n == 0) throw std::invalid_argument("factor(0)");
  std::map<Int, unsigned> out;
  if (n < 0) n = -n;
  for (const long small : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), small)) {
      ++out[Int(small)];
      n /= small;
    }
  }
  // Continue trial division a bit before handing to rho.
  Int d = 41;
  while (n > 1 && d * d <= n && d < 100000) {
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      ++out[d];
      n /= d;
    }
    d += 2;
  }
  if (n > 1) {
    if (d * d > n)
      ++out[n];
    else
      factor_into(n, out);
  }
  return out;
}

Int squarefree_part(const Int& n) {
  if (n == 0) throw std::invalid_argument("squarefree_part(0)");
  Int out = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n))
    if (e % 2 == 1) out *= p;
  return out;
}

Int square_class(const Rational& r) {
  if (r == 0) throw std::invalid_argument("square_class(0)");
  return squarefree_part(r.get_num() * r.get_den());
}

bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

long val_int(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("val_int(0)");
  Int m = n;
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

ValOrInf val(const Rational& r, const OddPrime& p) {
  if (r == 0) return ValOrInf::infinity();
  return ValOrInf::of(val_int(r.get_num(), p.p) - val_int(r.get_den(), p.p));
}

Int pow_mod(const Int& base, const Int& exp, const Int& mod) {
  Int out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

Int inv_mod(const Int& a, const Int& mod) {
  Int out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::domain_error("inv_mod: not invertible");
  return out;
}

int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

namespace {

/// Tonelli-Shanks square root modulo an odd prime; a must be a residue.
Int tonelli_shanks(const Int& a, const Int& p) {
  Int a0 = a % p;
  if (a0 < 0) a0 += p;
  if (p % 4 == 3) return pow_mod(a0, (p + 1) / 4, p);

  // Write p - 1 = q * 2^s with q odd.
  Int q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  // Find a quadratic non-residue z.
  Int z = 2;
  while (legendre(z, p) != -1) ++z;

  Int m(static_cast<long>(s));
  Int c = pow_mod(z, q, p);
  Int t = pow_mod(a0, q, p);
  Int r = pow_mod(a0, (q + 1) / 2, p);
  while (t != 1) {
    Int t2 = t;
    long i = 0;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

}  // namespace

std::optional<Int> sqrt_mod(const Int& a, const OddPrime& p, unsigned k) {
  if (k == 0) throw std::invalid_argument("sqrt_mod: k must be positive");
  if (mpz_divisible_p(a.get_mpz_t(), p.p.get_mpz_t()))
    throw std::invalid_argument("sqrt_mod: argument divisible by p; factor out even powers first");
  if (legendre(a, p.p) != 1) return std::nullopt;

  Int root = tonelli_shanks(a, p.p);
  Int mod = p.p;
  // Hensel: x -> x - (x^2 - a) / (2x), doubling precision each step.
  for (unsigned prec = 1; prec < k;) {
    unsigned next = std::min(2 * prec, k);
    Int next_mod;
    mpz_pow_ui(next_mod.get_mpz_t(), p.p.get_mpz_t(), next);
    Int deriv_inv = inv_mod(2 * root % next_mod, next_mod);
    root = (root - (root * root - a) % next_mod * deriv_inv) % next_mod;
    if (root < 0) root += next_mod;
    mod = next_mod;
    prec = next;
  }
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), p.p.get_mpz_t(), k);
  root %= pk;
  if (root < 0) root += pk;
  if (2 * root > pk) root = pk - root;
  return root;
}

Int crt(const std::vector<std::pair<Int, Int>>& congruences) {
  if (congruences.empty()) throw std::invalid_argument("crt: empty input");
  Int x = congruences[0].first % congruences[0].second;
  if (x < 0) x += congruences[0].second;
  Int m = congruences[0].second;
  for (std::size_t i = 1; i < congruences.size(); ++i) {
    const auto& [r, n] = congruences[i];
    Int g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    if (g != 1) throw std::invalid_argument("crt: moduli not coprime");
    Int delta = (r - x) % n;
    if (delta < 0) delta += n;
    x += m * (delta * inv_mod(m % n, n) % n);
    m *= n;
  }
  return x % m;
}

std::optional<Int> rational_mod(const Rational& r, const Int& mod) {
  Int g;
  mpz_gcd(g.get_mpz_t(), r.get_den().get_mpz_t(), mod.get_mpz_t());
  if (g != 1) return std::nullopt;
  Int num = r.get_num() % mod;
  if (num < 0) num += mod;
  return num * inv_mod(r.get_den() % mod, mod) % mod;
}

namespace {

/// (a,b)_p for odd p, with a = p^alpha u, b = p^beta v and u, v p-units:
/// (-1)^(alpha beta (p-1)/2) (u|p)^beta (v|p)^alpha.
int hilbert_odd(const Rational& a, const Rational& b, const Int& p) {
  OddPrime P(p);
  const long alpha = val(a, P).v;
  const long beta = val(b, P).v;
  Rational u = a, v = b;
  Int pa, pb;
  mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(alpha)));
  mpz_pow_ui(pb.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(beta)));
  if (alpha >= 0) u /= pa; else u *= pa;
  if (beta >= 0) v /= pb; else v *= pb;
  Int un = u.get_num() * u.get_den();
  Int vn = v.get_num() * v.get_den();
  int out = 1;
  if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 == 1) out = -out;
  if (beta % 2) out *= legendre(un, p);
  if (alpha % 2) out *= legendre(vn, p);
  return out;
}

/// (a,b)_2 via the closed-form parity formula on 2-adic components.
int hilbert_two(const Rational& a, const Rational& b) {
  const long alpha = val_int(a.get_num(), 2) - val_int(a.get_den(), 2);
  const long beta = val_int(b.get_num(), 2) - val_int(b.get_den(), 2);
  Int un = odd_part(a.get_num()) * odd_part(a.get_den());
  Int vn = odd_part(b.get_num()) * odd_part(b.get_den());
  auto eps = [](const Int& u) { return mpz_class((u - 1) / 2 % 2).get_si(); };
  auto omega = [](const Int& u) { return mpz_class((u * u - 1) / 8 % 2).get_si(); };
  long e = eps(un) * eps(vn) + alpha * omega(vn) + beta * omega(un);
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be non-zero");
  switch (v.kind) {
    case Place::Kind::Infinite:
      return (a < 0 && b < 0) ? -1 : 1;
    case Place::Kind::Two:
      return hilbert_two(a, b);
    case Place::Kind::OddFinite:
      return hilbert_odd(a, b, v.p);
  }
  throw std::logic_error("hilbert_symbol: bad place");
}

namespace {

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<std::array<Int, 4>> four_squares_bruteforce(const Int& n) {
  for (Int a = isqrt(n); a >= 0; --a) {
    Int ra = n - a * a;
    for (Int b = std::min(a, isqrt(ra)); b >= 0; --b) {
      Int rb = ra - b * b;
      if (rb > 2 * b * b) break;  // c, d <= b can no longer cover the remainder
      for (Int c = std::min(b, isqrt(rb)); c >= 0; --c) {
        Int rc = rb - c * c;
        if (rc > c * c) break;
        if (is_perfect_square(rc)) return std::array<Int, 4>{a, b, c, isqrt(rc)};
      }
    }
  }
  return std::nullopt;
}

/// Cornacchia for p prime, p = 1 (mod 4): p = x^2 + y^2.
std::pair<Int, Int> two_squares_prime(const Int& p) {
  // Square root of -1 mod p, then Euclidean descent.
  Int z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  Int x = pow_mod(z, (p - 1) / 4, p);
  Int a = p, b = x;
  Int bound = isqrt(p);
  while (b > bound) {
    Int t = a % b;
    a = b;
    b = t;
  }
  Int y2 = p - b * b;
  return {b, isqrt(y2)};
}

}  // namespace

std::array<Int, 4> four_squares(const Int& n) {
  if (n < 0) throw std::invalid_argument("four_squares: negative input");
  if (n == 0) return {0, 0, 0, 0};
  if (n < 1000000) {
    auto r = four_squares_bruteforce(n);
    if (!r) throw std::logic_error("four_squares: brute force failed");
    return *r;
  }
  // Larger inputs: peel a square, then seek prime = 1 (mod 4) or small tail.
  for (Int a = isqrt(n); a >= 0; --a) {
    Int ra = n - a * a;
    for (Int b = std::min(a, isqrt(ra)); b >= 0; --b) {
      Int rb = ra - b * b;
      if (rb == 0) {
        std::array<Int, 4> out{a, b, 0, 0};
        std::sort(out.rbegin(), out.rend());
        return out;
      }
      if (is_perfect_square(rb)) {
        std::array<Int, 4> out{a, b, isqrt(rb), Int(0)};
        std::sort(out.rbegin(), out.rend());
        return out;
      }
      if (rb % 4 == 1 && is_prime(rb)) {
        auto [c, d] = two_squares_prime(rb);
        std::array<Int, 4> out{a, b, c, d};
        std::sort(out.rbegin(), out.rend());
        if (out[0] * out[0] + out[1] * out[1] + out[2] * out[2] + out[3] * out[3] != n)
          throw std::logic_error("four_squares: verification failed");
        return out;
      }
      if (b < a - 2000) break;  // move a; tails without nearby primes are rare
    }
  }
  throw std::logic_error("four_squares: decomposition not found");
}

OIdeal ideal_product(const OIdeal& a, const OIdeal& b) { return OIdeal(a.m * b.m); }

OIdeal ideal_sum(const OIdeal& a, const OIdeal& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.m.get_mpz_t(), b.m.get_mpz_t());
  return OIdeal(g);
}

OIdeal ideal_intersection(const OIdeal& a, const OIdeal& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.m.get_mpz_t(), b.m.get_mpz_t());
  return OIdeal(l);
}

OIdeal ideal_power(const OIdeal& a, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), a.m.get_mpz_t(), e);
  return OIdeal(out);
}

Int odd_part(Int n) {
  if (n == 0) throw std::invalid_argument("odd_part(0)");
  while (mpz_even_p(n.get_mpz_t())) n /= 2;
  return n;
}

std::vector<OddPrime> ideal_primes(const OIdeal& I) {
  std::vector<OddPrime> out;
  for (const auto& [p, e] : factor(I.m)) out.emplace_back(p);
  return out;
}

}  // namespace spinlab
