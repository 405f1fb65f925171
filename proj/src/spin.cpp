#include "spinlab/spin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace spinlab {

Mat mat_identity(int n) {
  Mat m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int m = static_cast<int>(b[0].size());
  Mat out(n, std::vector<Rational>(m, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

Vector mat_vec(const Mat& m, const Vector& v) {
  const int n = static_cast<int>(m.size());
  Vector out(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += m[i][j] * v[j];
  return out;
}

Rational mat_det(Mat m) {
  const int n = static_cast<int>(m.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = 1 / m[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rational factor = m[row][col] * inv;
      for (int j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  return det;
}

Mat mat_transpose(const Mat& m) {
  const int n = static_cast<int>(m.size());
  Mat out(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[j][i] = m[i][j];
  return out;
}

namespace {

bool preserves_form(const QuadForm& form, const Mat& m) {
  const int n = form.dim;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational entry = 0;
      for (int k = 0; k < n; ++k) entry += m[k][i] * form.diag[k] * m[k][j];
      if (entry != (i == j ? form.diag[i] : Rational(0))) return false;
    }
  return true;
}

}  // namespace

SOMatrix::SOMatrix(QuadForm f, Mat matrix) : form(std::move(f)), m(std::move(matrix)) {
  if (static_cast<int>(m.size()) != form.dim)
    throw std::invalid_argument("SOMatrix: size mismatch");
  if (!preserves_form(form, m)) throw std::invalid_argument("SOMatrix: form not preserved");
  if (mat_det(m) != 1) throw std::invalid_argument("SOMatrix: determinant is not +1");
}

SpinCheck is_spin(const Multivector& x) {
  SpinCheck out;
  if (!x.is_even()) {
    out.reason = "odd-grade component present";
    return out;
  }
  Multivector norm = gp(x, reverse(x));
  if (!norm.is_scalar() || norm.scalar_part() != 1) {
    out.reason = "x x' != 1";
    return out;
  }
  const QuadForm& form = x.form();
  Mat m(form.dim, std::vector<Rational>(form.dim));
  for (int j = 0; j < form.dim; ++j) {
    Vector ej(form.dim, Rational(0));
    ej[j] = 1;
    Vector image;
    try {
      image = twisted_action(x, ej);
    } catch (const std::domain_error&) {
      out.reason = "twisted action of e" + std::to_string(j + 1) + " is not grade-1";
      return out;
    }
    for (int i = 0; i < form.dim; ++i) m[i][j] = image[i];
  }
  if (!preserves_form(form, m)) {
    out.reason = "action does not preserve the form";
    return out;
  }
  if (mat_det(m) != 1) {
    out.reason = "action has determinant -1";
    return out;
  }
  out.ok = true;
  out.matrix = SOMatrix(form, std::move(m));
  return out;
}

SpinElement::SpinElement(Multivector g)
    : g_(std::move(g)), matrix_([this] {
        SpinCheck check = is_spin(g_);
        if (!check.ok) throw std::invalid_argument("not a Spin element: " + check.reason);
        return *std::move(check.matrix);
      }()) {}

SpinElement SpinElement::inverse() const { return SpinElement(reverse(g_)); }

SpinElement spin_mul(const SpinElement& a, const SpinElement& b) {
  return SpinElement(gp(a.mv(), b.mv()));
}

Mat reflection_matrix(const QuadForm& form, const Vector& a) {
  const Rational norm = form.eval(a);
  if (norm == 0) throw std::invalid_argument("reflection_matrix: isotropic vector");
  Mat m = mat_identity(form.dim);
  for (int j = 0; j < form.dim; ++j) {
    // column j: e_j - (2 B(e_j, a)/f(a)) a
    const Rational coeff = 2 * form.diag[j] * a[j] / norm;
    for (int i = 0; i < form.dim; ++i) m[i][j] -= coeff * a[i];
  }
  return m;
}

namespace {

/// Rational square root of a positive rational that is an exact square.
std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r <= 0) return std::nullopt;
  if (!is_perfect_square(r.get_num()) || !is_perfect_square(r.get_den())) return std::nullopt;
  Int num, den;
  mpz_sqrt(num.get_mpz_t(), r.get_num().get_mpz_t());
  mpz_sqrt(den.get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(num, den);
}

}  // namespace

SpinElement spin_from_vectors(const QuadForm& form, const std::vector<Vector>& vs) {
  if (vs.size() % 2 != 0)
    throw std::invalid_argument("spin_from_vectors: vector count must be even");
  Rational norm_product = 1;
  Multivector product = Multivector::scalar(form, 1);
  for (const Vector& v : vs) {
    const Rational n = form.eval(v);
    if (n == 0) throw std::invalid_argument("spin_from_vectors: isotropic vector");
    norm_product *= n;
    product = gp(product, embed_vector(form, v));
  }
  auto r = rational_sqrt(norm_product);
  if (!r)
    throw std::invalid_argument("spin_from_vectors: norm product is not a rational square");
  return SpinElement(Rational(1) / *r * product);
}

std::vector<Vector> reflection_decompose(const SOMatrix& M) {
  const QuadForm& form = M.form;
  const int n = form.dim;
  Mat cur = M.m;
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) {
    Vector ei(n, Rational(0));
    ei[i] = 1;
    Vector v(n);
    for (int r = 0; r < n; ++r) v[r] = cur[r][i];
    if (v == ei) continue;
    Vector diff(n);
    for (int r = 0; r < n; ++r) diff[r] = v[r] - ei[r];
    if (form.eval(diff) != 0) {
      out.push_back(diff);
      cur = mat_mul(reflection_matrix(form, diff), cur);
    } else {
      // v - e_i isotropic; then f(v + e_i) = 4 f(e_i) != 0 and
      // tau_{e_i} tau_{v+e_i} sends v to e_i.
      Vector sum(n);
      for (int r = 0; r < n; ++r) sum[r] = v[r] + ei[r];
      out.push_back(sum);
      out.push_back(ei);
      cur = mat_mul(reflection_matrix(form, ei),
                    mat_mul(reflection_matrix(form, sum), cur));
    }
  }
  if (out.size() % 2 != 0)
    throw std::logic_error("reflection_decompose: odd count for det +1 input");
  // R_{c_m} ... R_{c_1} M = I and reflections are involutions, so the
  // product in list order R_{c_1} ... R_{c_m} equals M.
  return out;
}

Int spinor_norm(const SOMatrix& M) {
  Rational product = 1;
  for (const Vector& a : reflection_decompose(M)) product *= M.form.eval(a);
  if (product == 0) throw std::logic_error("spinor_norm: isotropic reflection vector");
  return square_class(product);
}

namespace {

/// Candidate integer vectors orthogonal to v2, used for spinor-norm repair.
std::vector<Vector> perp_candidates(const QuadForm& form, const Vector& v2) {
  const int n = form.dim;
  std::vector<Vector> base;
  for (int i = 0; i < n; ++i) {
    if (v2[i] == 0) {
      Vector e(n, Rational(0));
      e[i] = 1;
      base.push_back(std::move(e));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (v2[i] == 0 && v2[j] == 0) continue;
      Vector w(n, Rational(0));
      w[i] = form.diag[j] * v2[j];
      w[j] = -form.diag[i] * v2[i];
      if (form.bilinear(w, v2) != 0) continue;
      base.push_back(std::move(w));
    }
  std::vector<Vector> out = base;
  // Small integer combinations of two base vectors widen the reachable
  // square classes.
  const int kCoeffBound = 6;
  for (std::size_t a = 0; a < base.size(); ++a)
    for (std::size_t b = a + 1; b < base.size(); ++b)
      for (int ca = 1; ca <= kCoeffBound; ++ca)
        for (int cb = -kCoeffBound; cb <= kCoeffBound; ++cb) {
          if (cb == 0) continue;
          Vector w(n);
          for (int r = 0; r < n; ++r) w[r] = ca * base[a][r] + cb * base[b][r];
          out.push_back(std::move(w));
        }

  // Pairwise combinations only reach sums of two terms, which misses square
  // classes needing three or four squares (23, for instance, in the definite
  // case). Build a form-orthogonal basis of v2^perp by Gram-Schmidt over the
  // coordinate basis and add 3- and 4-term combinations of its head; with
  // mutually orthogonal summands the norms just add, so these sweep a much
  // denser set of classes.
  std::vector<Vector> ortho;
  for (int i = 0; i < n && ortho.size() < 4; ++i) {
    Vector w(n, Rational(0));
    w[i] = 1;
    const Rational bv = form.bilinear(w, v2);
    const Rational fv2 = form.eval(v2);
    if (fv2 != 0)
      for (int r = 0; r < n; ++r) w[r] -= bv / fv2 * v2[r];
    for (const Vector& u : ortho) {
      const Rational fu = form.eval(u);
      if (fu == 0) continue;
      const Rational c = form.bilinear(w, u) / fu;
      for (int r = 0; r < n; ++r) w[r] -= c * u[r];
    }
    bool zero = true;
    for (const auto& c : w) zero = zero && c == 0;
    if (zero || form.eval(w) == 0 || form.bilinear(w, v2) != 0) continue;
    // clear denominators
    Int lcm = 1;
    for (const auto& c : w) {
      Int l;
      mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
      lcm = l;
    }
    for (auto& c : w) {
      c *= lcm;
      c.canonicalize();
    }
    ortho.push_back(std::move(w));
  }
  const int kOrthoBound = 4;
  const std::size_t k = ortho.size();
  if (k >= 3) {
    std::array<int, 4> c{};
    const int top = kOrthoBound;
    for (c[0] = 0; c[0] <= top; ++c[0])
      for (c[1] = 0; c[1] <= top; ++c[1])
        for (c[2] = 0; c[2] <= top; ++c[2])
          for (c[3] = 0; c[3] <= (k >= 4 ? top : 0); ++c[3]) {
            int nz = (c[0] != 0) + (c[1] != 0) + (c[2] != 0) + (c[3] != 0);
            if (nz < 3) continue;
            Vector w(n, Rational(0));
            for (std::size_t t = 0; t < k && t < 4; ++t)
              for (int r = 0; r < n; ++r) w[r] += c[t] * ortho[t][r];
            out.push_back(std::move(w));
          }
  }
  return out;
}

}  // namespace

SpinElement witt_map(const QuadForm& form, const Vector& v1, const Vector& v2) {
  const Rational norm = form.eval(v1);
  if (norm == 0 || norm != form.eval(v2))
    throw std::invalid_argument("witt_map: norms must match and be non-zero");
  if (v1 == v2) return spin_from_vectors(form, {});

  const int n = form.dim;
  Vector diff(n), sum(n);
  for (int i = 0; i < n; ++i) {
    diff[i] = v1[i] - v2[i];
    sum[i] = v1[i] + v2[i];
  }

  // One representative anisotropic vector of v2^perp per square class.
  std::map<Int, Vector> classes;
  for (const Vector& w : perp_candidates(form, v2)) {
    const Rational fw = form.eval(w);
    if (fw == 0) continue;
    classes.emplace(square_class(fw), w);
  }
  if (classes.empty()) throw std::domain_error("witt_map: v2^perp is totally isotropic");

  // Repair list in v2^perp whose norm classes multiply to `target`, with the
  // requested length parity. A repeated vector reflects twice (the identity),
  // so parity costs only a squared norm factor.
  auto repair = [&](const Int& target, bool even) -> std::optional<std::vector<Vector>> {
    if (even) {
      if (target == 1) return std::vector<Vector>{};
      for (auto i = classes.begin(); i != classes.end(); ++i)
        for (auto j = classes.begin(); j != classes.end(); ++j)
          if (square_class(Rational(i->first * j->first * target)) == 1)
            return std::vector<Vector>{i->second, j->second};
      return std::nullopt;
    }
    if (auto it = classes.find(target); it != classes.end())
      return std::vector<Vector>{it->second};
    for (auto i = classes.begin(); i != classes.end(); ++i)
      for (auto j = classes.begin(); j != classes.end(); ++j) {
        const Int rest = square_class(Rational(i->first * j->first * target));
        if (auto it = classes.find(rest); it != classes.end())
          return std::vector<Vector>{i->second, j->second, it->second};
      }
    return std::nullopt;
  };

  if (form.eval(diff) != 0) {
    // tau_diff maps v1 to v2; the repair reflections fix v2 and bring the
    // total norm product to a square so the lift lands in Spin.
    const Int target = square_class(form.eval(diff));
    if (auto ws = repair(target, /*even=*/false)) {
      ws->push_back(diff);
      return spin_from_vectors(form, *ws);
    }
    std::ostringstream os;
    os << "witt_map: no repair of square class " << target << " found in v2^perp";
    throw std::domain_error(os.str());
  }

  // Isotropic difference: tau_{v2} tau_{v1+v2} maps v1 to v2 with det +1;
  // repair the norm product with an even reflection list in v2^perp.
  const Int target = square_class(form.eval(sum) * norm);
  if (auto ws = repair(target, /*even=*/true)) {
    ws->push_back(v2);
    ws->push_back(sum);
    return spin_from_vectors(form, *ws);
  }
  std::ostringstream os;
  os << "witt_map: no repair of square class " << target << " found in v2^perp";
  throw std::domain_error(os.str());
}

namespace {

constexpr Blade kE12 = 0b0011;
constexpr Blade kE34 = 0b1100;
constexpr Blade kE56 = 0b110000;

}  // namespace

SpinElement coroot(int i, const Rational& t, int dim) {
  if (t == 0) throw std::invalid_argument("coroot: t must be non-zero");
  if (dim < 6) throw std::invalid_argument("coroot: dimension must be at least 6");
  if (i != 1 && i != 2) throw std::invalid_argument("coroot: index must be 1 or 2");
  const QuadForm form = QuadForm::split(dim);
  const Rational ti = 1 / t;
  const Blade first = (i == 1) ? kE12 : kE34;
  const Blade second = (i == 1) ? kE34 : kE56;
  Multivector h(form);
  h.add_term(0, (t + 2 + ti) / 4);
  h.add_term(first, (t - ti) / 4);
  h.add_term(second, -(t - ti) / 4);
  h.add_term(first | second, -(t - 2 + ti) / 4);
  return SpinElement(std::move(h));
}

Multivector root_vector(int i, int dim) {
  if (dim < 6) throw std::invalid_argument("root_vector: dimension must be at least 6");
  const QuadForm form = QuadForm::split(dim);
  Multivector x(form);
  auto blade = [](int a, int b) { return (Blade(1) << (a - 1)) | (Blade(1) << (b - 1)); };
  if (i == 1) {
    // X = e1e3 + e2e3 - e1e4 - e2e4
    x.add_term(blade(1, 3), 1);
    x.add_term(blade(2, 3), 1);
    x.add_term(blade(1, 4), -1);
    x.add_term(blade(2, 4), -1);
  } else if (i == 2) {
    // Y = e3e5 + e4e5 - e3e6 - e4e6
    x.add_term(blade(3, 5), 1);
    x.add_term(blade(4, 5), 1);
    x.add_term(blade(3, 6), -1);
    x.add_term(blade(4, 6), -1);
  } else {
    throw std::invalid_argument("root_vector: index must be 1 or 2");
  }
  return x;
}

int adjoint_on_root(int i, const Rational& t, int dim) {
  if (t == 0 || t == 1 || t == -1)
    throw std::invalid_argument("adjoint_on_root: t must avoid {0, 1, -1}");
  const SpinElement h = coroot(i, t, dim);
  const Multivector x = root_vector(i, dim);
  const Multivector conj = gp(gp(h.mv(), x), reverse(h.mv()));
  // Expect conj = lambda * x for a power lambda = t^c.
  const auto& xt = x.terms();
  const auto& ct = conj.terms();
  if (ct.size() != xt.size())
    throw std::domain_error("adjoint_on_root: conjugate not proportional to the root vector");
  const Rational lambda = ct.begin()->second / xt.begin()->second;
  for (const auto& [b, c] : xt) {
    auto it = ct.find(b);
    if (it == ct.end() || it->second != lambda * c)
      throw std::domain_error("adjoint_on_root: conjugate not proportional to the root vector");
  }
  for (int c = -6; c <= 6; ++c) {
    Rational power = 1;
    for (int k = 0; k < std::abs(c); ++k) power *= (c > 0) ? t : 1 / t;
    if (power == lambda) return c;
  }
  throw std::domain_error("adjoint_on_root: eigenvalue is not an integer power of t");
}

double separation(const SpinElement& g) {
  const QuadForm& form = g.form();
  for (const auto& d : form.diag)
    if (d <= 0)
      throw std::domain_error("separation: not applicable (form is not definite)");
  const int n = form.dim;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g.matrix().m[i][j].get_d();
  double best = 0;
  bool first = true;
  for (const double z : {1.0, -1.0}) {
    Eigen::MatrixXd diffm = m - z * Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffm);
    const double s = svd.singularValues()(0);
    if (first || s < best) best = s;
    first = false;
  }
  return best;
}

}  // namespace spinlab
