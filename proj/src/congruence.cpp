#include "spinlab/congruence.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace spinlab {

namespace {

Int norm_mod(const Int& a, const Int& m) { return (a % m + m) % m; }

Int pow_int(const Int& p, int k) {
  Int out = 1;
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

/// Reduction of a form coefficient (denominator a power of 2, odd m).
Int coeff_mod(const Rational& r, const Int& m) {
  auto v = rational_mod(r, m);
  if (!v) throw std::invalid_argument("reduce_mod: denominator not prime to the modulus");
  return *v;
}

}  // namespace

ModMultivector reduce_mod(const Multivector& g, const Int& m) {
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("reduce_mod: modulus must be odd, >= 3");
  ModMultivector out{m, {}};
  for (const auto& [b, c] : g.terms()) {
    Int r = coeff_mod(c, m);
    if (r != 0) out.terms[b] = r;
  }
  return out;
}

ModMultivector gp_mod(const QuadForm& form, const ModMultivector& a, const ModMultivector& b) {
  if (a.modulus != b.modulus) throw std::invalid_argument("gp_mod: modulus mismatch");
  const Int& m = a.modulus;
  std::map<Blade, Int> acc;
  for (const auto& [ba, ca] : a.terms)
    for (const auto& [bb, cb] : b.terms) {
      const Rational coeff = blade_product_coeff(ba, bb, form);
      if (coeff == 0) continue;
      const Blade target = ba ^ bb;
      acc[target] = norm_mod(acc[target] + ca * cb * coeff_mod(coeff, m), m);
    }
  ModMultivector out{m, {}};
  for (auto& [b, c] : acc)
    if (c != 0) out.terms[b] = c;
  return out;
}

ModMultivector reverse_mod(const ModMultivector& a) {
  ModMultivector out{a.modulus, {}};
  for (const auto& [b, c] : a.terms) {
    const int k = blade_grade(b);
    const bool flip = (k * (k - 1) / 2) % 2 == 1;
    out.terms[b] = flip ? norm_mod(-c, a.modulus) : c;
  }
  return out;
}

bool in_congruence_subgroup(const SpinElement& g, const OIdeal& I) {
  if (I.m == 1) return true;
  ModMultivector r = reduce_mod(g.mv(), I.m);
  return r.terms.size() == 1 && r.terms.begin()->first == 0 && r.terms.begin()->second == 1;
}

bool is_spin_mod(const QuadForm& form, const ModMultivector& x) {
  for (const auto& [b, c] : x.terms)
    if (blade_grade(b) % 2 != 0) return false;
  ModMultivector norm = gp_mod(form, x, reverse_mod(x));
  if (!(norm.terms.size() == 1 && norm.terms.begin()->first == 0 &&
        norm.terms.begin()->second == 1))
    return false;
  for (int j = 0; j < form.dim; ++j) {
    ModMultivector ej{x.modulus, {{Blade(1) << j, Int(1)}}};
    ModMultivector img = gp_mod(form, gp_mod(form, x, ej), reverse_mod(x));
    for (const auto& [b, c] : img.terms)
      if (blade_grade(b) != 1) return false;
  }
  return true;
}

std::vector<std::vector<Int>> action_matrix_mod(const QuadForm& form, const ModMultivector& x) {
  if (!is_spin_mod(form, x)) throw std::invalid_argument("action_matrix_mod: not spin mod m");
  std::vector<std::vector<Int>> mtx(form.dim, std::vector<Int>(form.dim, Int(0)));
  ModMultivector xr = reverse_mod(x);
  for (int j = 0; j < form.dim; ++j) {
    ModMultivector ej{x.modulus, {{Blade(1) << j, Int(1)}}};
    ModMultivector img = gp_mod(form, gp_mod(form, x, ej), xr);
    for (const auto& [b, c] : img.terms) {
      int i = 0;
      Blade bb = b;
      while ((bb & 1) == 0) {
        bb >>= 1;
        ++i;
      }
      mtx[i][j] = c;
    }
  }
  return mtx;
}

std::vector<ModMultivector> enumerate_spin_mod(const QuadForm& form, const Int& m,
                                               unsigned long cap) {
  std::vector<Blade> even_blades;
  for (Blade b = 0; b < (Blade(1) << form.dim); ++b)
    if (blade_grade(b) % 2 == 0) even_blades.push_back(b);
  const unsigned long mm = m.get_ui();
  double total = 1;
  for (std::size_t i = 0; i < even_blades.size(); ++i) total *= static_cast<double>(mm);
  if (total > static_cast<double>(cap))
    throw std::invalid_argument("enumerate_spin_mod: coefficient space exceeds the cap");
  std::vector<ModMultivector> out;
  std::vector<unsigned long> digits(even_blades.size(), 0);
  while (true) {
    ModMultivector x{m, {}};
    for (std::size_t i = 0; i < even_blades.size(); ++i)
      if (digits[i] != 0) x.terms[even_blades[i]] = Int(digits[i]);
    if (is_spin_mod(form, x)) out.push_back(std::move(x));
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == mm) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return out;
}

IntMat isometry_mod(const Int& p, int k, int dim) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("isometry_mod: p must be an odd prime");
  if (k < 1 || dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("isometry_mod: need positive precision and even dimension");
  if (dim % 4 != 0 && p % 4 == 3)
    throw std::domain_error(
        "isometry_mod: determinants differ by a non-square (-1) for dim = 2 mod 4, p = 3 mod 4");
  const Int pk = pow_int(p, k);
  IntMat M(dim, std::vector<Int>(dim, Int(0)));
  // Split form convention: column norms alternate -1, +1, -1, ...
  if (p % 4 == 1) {
    // 2x2 blocks [z 0; 0 1] with z^2 = -1 (Hensel-lifted by sqrt_mod).
    const Int z = *sqrt_mod(pk - 1, OddPrime{p}, static_cast<unsigned>(k));
    for (int b = 0; b < dim / 2; ++b) {
      M[2 * b][2 * b] = z;
      M[2 * b + 1][2 * b + 1] = 1;
    }
    return M;
  }
  // p = 3 mod 4, dim = 0 mod 4: 4x4 blocks from x^2 + y^2 = -1 (mod p^k).
  Int x = 0, y = 0;
  for (Int xc = 0; xc < p; ++xc) {
    Int rest = norm_mod(-1 - xc * xc, p);
    if (rest == 0 || legendre(rest, p) == 1) {
      x = xc;
      y = (rest == 0) ? Int(0) : *sqrt_mod(rest, OddPrime{p}, 1);
      break;
    }
    if (xc == p - 1) throw std::logic_error("isometry_mod: no solution mod p");
  }
  // Newton lift of x^2 + y^2 + 1 = 0; one of 2x, 2y is a unit.
  Int mod = p;
  while (mod < pk) {
    Int next = mod * mod;
    if (next > pk) next = pk;
    Int f = norm_mod(x * x + y * y + 1, next);
    if (y % p != 0) {
      y = norm_mod(y - f * inv_mod(norm_mod(2 * y, next), next), next);
    } else {
      x = norm_mod(x - f * inv_mod(norm_mod(2 * x, next), next), next);
    }
    mod = next;
  }
  if (norm_mod(x * x + y * y + 1, pk) != 0) throw std::logic_error("isometry_mod: lift failed");
  for (int b = 0; b < dim / 4; ++b) {
    const int o = 4 * b;
    // columns: (x,y,0,0) norm -1; e3 norm +1; (-y,x,0,0) norm -1; e4 norm +1
    M[o][o] = x;
    M[o + 1][o] = y;
    M[o + 2][o + 1] = 1;
    M[o][o + 2] = norm_mod(-y, pk);
    M[o + 1][o + 2] = x;
    M[o + 3][o + 3] = 1;
  }
  return M;
}

namespace {

std::string matrix_key(const std::vector<std::vector<Int>>& m) {
  std::ostringstream os;
  for (const auto& row : m)
    for (const auto& e : row) os << e << ',';
  return os.str();
}

std::string coeff_key(const ModMultivector& x) {
  std::ostringstream os;
  for (const auto& [b, c] : x.terms) os << b << ':' << c << ';';
  return os.str();
}

struct Enumerated {
  std::vector<ModMultivector> elements;
  std::unordered_map<std::string, std::size_t> index;  // by chosen key
  bool capped = false;
};

Enumerated close_group(const QuadForm& form, const std::vector<ModMultivector>& gens,
                       bool hash_coeffs, unsigned long cap) {
  Enumerated out;
  ModMultivector one{gens.empty() ? Int(3) : gens[0].modulus, {{0, Int(1)}}};
  auto key = [&](const ModMultivector& x) {
    return hash_coeffs ? coeff_key(x) : matrix_key(action_matrix_mod(form, x));
  };
  auto push = [&](const ModMultivector& x) {
    std::string k = key(x);
    if (out.index.count(k)) return false;
    out.index.emplace(std::move(k), out.elements.size());
    out.elements.push_back(x);
    return true;
  };
  push(one);
  std::deque<std::size_t> frontier{0};
  for (const auto& g : gens) {
    if (push(g)) frontier.push_back(out.elements.size() - 1);
  }
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      ModMultivector prod = gp_mod(form, out.elements[i], g);
      if (push(prod)) {
        if (out.elements.size() > cap) {
          out.capped = true;
          return out;
        }
        frontier.push_back(out.elements.size() - 1);
      }
    }
  }
  return out;
}

WidthReport width_on(const QuadForm& form, const Enumerated& group, const ModMultivector& x,
                     int cap, bool hash_coeffs) {
  WidthReport rep;
  rep.group_order = group.elements.size();
  rep.mode = "exact";
  auto key = [&](const ModMultivector& e) {
    return hash_coeffs ? coeff_key(e) : matrix_key(action_matrix_mod(form, e));
  };
  // Generalized conjugacy class of x: conjugates of x and x^-1, plus 1.
  std::vector<ModMultivector> gcl;
  std::unordered_set<std::string> seen;
  auto add = [&](const ModMultivector& e) {
    std::string k = key(e);
    if (seen.insert(std::move(k)).second) gcl.push_back(e);
  };
  ModMultivector one{x.modulus, {{0, Int(1)}}};
  add(one);
  const ModMultivector xinv = reverse_mod(x);
  for (const auto& h : group.elements) {
    const ModMultivector hinv = reverse_mod(h);
    add(gp_mod(form, gp_mod(form, h, x), hinv));
    add(gp_mod(form, gp_mod(form, h, xinv), hinv));
  }
  rep.class_size = gcl.size();

  // BFS closure of products of class elements.
  std::unordered_set<std::string> reached;
  std::vector<ModMultivector> layer;
  reached.insert(key(one));
  layer.push_back(one);
  rep.subgroup_order = 1;
  long width = 0;
  while (!layer.empty()) {
    if (width >= cap) {
      // New elements still appearing past the cap.
      bool grew = false;
      for (const auto& e : layer)
        for (const auto& c : gcl) {
          ModMultivector prod = gp_mod(form, e, c);
          if (!reached.count(key(prod))) grew = true;
        }
      if (grew || rep.subgroup_order < reached.size()) {
        rep.cap_exceeded = true;
        rep.width = -1;
        return rep;
      }
      break;
    }
    std::vector<ModMultivector> next;
    for (const auto& e : layer)
      for (const auto& c : gcl) {
        ModMultivector prod = gp_mod(form, e, c);
        std::string k = key(prod);
        if (reached.insert(std::move(k)).second) next.push_back(std::move(prod));
      }
    if (next.empty()) break;
    ++width;
    rep.layers.push_back(next.size());
    rep.subgroup_order += next.size();
    layer = std::move(next);
  }
  rep.width = width;
  return rep;
}

}  // namespace

WidthReport gcl_width_bfs(const FiniteGroupSpec& spec, const ModMultivector& x, int cap,
                          unsigned long enumeration_cap) {
  for (const auto& g : spec.generators)
    if (!is_spin_mod(spec.form, g))
      throw std::invalid_argument("gcl_width_bfs: generator fails mod-m spin membership");
  if (!is_spin_mod(spec.form, x))
    throw std::invalid_argument("gcl_width_bfs: element fails mod-m spin membership");

  Enumerated group = close_group(spec.form, spec.generators, false, enumeration_cap);
  if (group.capped) {
    // Sampled lower-bound mode: random products stand in for the group.
    WidthReport rep;
    rep.mode = "sampled";
    rep.cap_exceeded = true;
    rep.group_order = group.elements.size();  // lower bound
    std::mt19937_64 rng(12345);
    std::unordered_set<std::string> cls;
    const ModMultivector xinv = reverse_mod(x);
    for (int i = 0; i < 2000; ++i) {
      ModMultivector h{x.modulus, {{0, Int(1)}}};
      std::uniform_int_distribution<std::size_t> pick(0, spec.generators.size() - 1);
      for (int j = 0; j < 12; ++j) h = gp_mod(spec.form, h, spec.generators[pick(rng)]);
      const ModMultivector hinv = reverse_mod(h);
      cls.insert(matrix_key(action_matrix_mod(
          spec.form, gp_mod(spec.form, gp_mod(spec.form, h, x), hinv))));
      cls.insert(matrix_key(action_matrix_mod(
          spec.form, gp_mod(spec.form, gp_mod(spec.form, h, xinv), hinv))));
    }
    rep.class_size = cls.size();  // lower bound
    rep.width = -1;
    return rep;
  }

  WidthReport rep = width_on(spec.form, group, x, cap, false);
  // Surface the center's effect on small cases by rerunning with
  // coefficient hashing, where x and -x stay distinct.
  if (!rep.cap_exceeded && rep.group_order <= 2000) {
    Enumerated full = close_group(spec.form, spec.generators, true, enumeration_cap);
    WidthReport with_center = width_on(spec.form, full, x, cap, true);
    rep.width_with_center = with_center.cap_exceeded ? -1 : with_center.width;
  }
  return rep;
}

FiniteGroupSpec spin_quotient_generators(const QuadForm& form, const Int& modulus) {
  if (modulus < 3 || modulus % 2 == 0)
    throw std::invalid_argument("spin_quotient_generators: modulus must be odd, >= 3");
  FiniteGroupSpec spec{form, modulus, {}};
  const Int& m = modulus;
  // Plane factors c + s e_i e_j for every pair, one per (unit) solution
  // family of c^2 + d_i d_j s^2 = 1 with s != 0.
  for (int i = 0; i < form.dim; ++i)
    for (int j = i + 1; j < form.dim; ++j) {
      const Int dd = coeff_mod(form.diag[i] * form.diag[j], m);
      bool found = false;
      for (Int s = 1; s < m && !found; ++s)
        for (Int c = 0; c < m && !found; ++c) {
          if (norm_mod(c * c + dd * s * s, m) != 1) continue;
          ModMultivector g{m, {}};
          if (c != 0) g.terms[0] = c;
          g.terms[(Blade(1) << i) | (Blade(1) << j)] = s;
          if (!is_spin_mod(form, g)) continue;
          spec.generators.push_back(std::move(g));
          found = true;
        }
    }
  // Unipotent factors 1 + s (e_a + e_b)(e_c + e_d) on orthogonal isotropic
  // vectors, when the form provides them.
  for (int a = 0; a < form.dim; ++a)
    for (int b = a + 1; b < form.dim; ++b) {
      if (form.diag[a] + form.diag[b] != 0) continue;
      for (int c = 0; c < form.dim; ++c)
        for (int d = c + 1; d < form.dim; ++d) {
          if (c == a || c == b || d == a || d == b) continue;
          if (form.diag[c] + form.diag[d] != 0) continue;
          Multivector u = embed_vector(form, [&] {
            Vector v(form.dim, Rational(0));
            v[a] = 1;
            v[b] = 1;
            return v;
          }());
          Multivector w = embed_vector(form, [&] {
            Vector v(form.dim, Rational(0));
            v[c] = 1;
            v[d] = 1;
            return v;
          }());
          Multivector shear = Multivector::scalar(form, 1) + gp(u, w);
          ModMultivector g = reduce_mod(shear, m);
          if (is_spin_mod(form, g)) spec.generators.push_back(std::move(g));
        }
    }
  return spec;
}

bool sl3_commutator_identity(const Int& t, const Int& s, const Int& m) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("sl3_commutator_identity: modulus must be odd");
  auto elem = [&](int i, int j, const Int& v) {
    IntMat e(3, std::vector<Int>(3, Int(0)));
    for (int d = 0; d < 3; ++d) e[d][d] = 1;
    e[i][j] = norm_mod(v, m);
    return e;
  };
  auto mul = [&](const IntMat& a, const IntMat& b) {
    IntMat out(3, std::vector<Int>(3, Int(0)));
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) out[i][j] = norm_mod(out[i][j] + a[i][k] * b[k][j], m);
    return out;
  };
  const IntMat a = elem(0, 1, t), ai = elem(0, 1, -t);
  const IntMat b = elem(1, 2, s), bi = elem(1, 2, -s);
  return mul(mul(a, b), mul(ai, bi)) == elem(0, 2, t * s);
}

}  // namespace spinlab
