#include "spinlab/clifford.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace spinlab {

QuadForm::QuadForm(int dimension, std::vector<Rational> diagonal)
    : dim(dimension), diag(std::move(diagonal)) {
  if (dim <= 0 || dim % 2 != 0 || dim > 30)
    throw std::invalid_argument("QuadForm: dimension must be even, positive, <= 30");
  if (static_cast<int>(diag.size()) != dim)
    throw std::invalid_argument("QuadForm: diagonal length mismatch");
  for (const auto& d : diag)
    if (d == 0) throw std::invalid_argument("QuadForm: diagonal entries must be non-zero");
}

QuadForm QuadForm::definite(int dim) {
  return QuadForm(dim, std::vector<Rational>(dim, Rational(1)));
}

QuadForm QuadForm::split(int dim) {
  std::vector<Rational> d(dim);
  for (int i = 0; i < dim; ++i) d[i] = (i % 2 == 0) ? Rational(-1) : Rational(1);
  return QuadForm(dim, std::move(d));
}

Rational QuadForm::eval(const Vector& v) const { return bilinear(v, v); }

Rational QuadForm::bilinear(const Vector& v, const Vector& w) const {
  if (static_cast<int>(v.size()) != dim || static_cast<int>(w.size()) != dim)
    throw std::invalid_argument("bilinear: dimension mismatch");
  Rational out = 0;
  for (int i = 0; i < dim; ++i) out += diag[i] * v[i] * w[i];
  return out;
}

int blade_grade(Blade b) { return std::popcount(b); }

std::string blade_to_string(Blade b) {
  if (b == 0) return "1";
  std::ostringstream os;
  os << "e{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (b & (Blade(1) << i)) {
      if (!first) os << ",";
      os << (i + 1);
      first = false;
    }
  }
  os << "}";
  return os.str();
}

Rational blade_product_coeff(Blade a, Blade b, const QuadForm& form) {
  // Transposition count: each index of b moves left past the indices of a
  // strictly above it.
  int swaps = 0;
  Blade rest = b;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    swaps += std::popcount(a >> (i + 1));
  }
  Rational coeff = (swaps % 2 == 0) ? 1 : -1;
  Blade common = a & b;
  while (common) {
    int i = std::countr_zero(common);
    common &= common - 1;
    coeff *= form.diag[i];
  }
  return coeff;
}

Multivector::Multivector(QuadForm form, std::map<Blade, Rational> terms)
    : form_(std::move(form)), terms_(std::move(terms)) {
  const Blade limit = (form_.dim >= 32) ? ~Blade(0) : ((Blade(1) << form_.dim) - 1);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if ((it->first & ~limit) != 0) throw std::invalid_argument("Multivector: blade out of range");
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Multivector Multivector::scalar(const QuadForm& form, const Rational& c) {
  Multivector out(form);
  out.add_term(0, c);
  return out;
}

Multivector Multivector::basis_blade(const QuadForm& form, Blade b, const Rational& c) {
  Multivector out(form);
  out.add_term(b, c);
  return out;
}

bool Multivector::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational Multivector::scalar_part() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Multivector::is_even() const {
  for (const auto& [b, c] : terms_)
    if (blade_grade(b) % 2 != 0) return false;
  return true;
}

bool Multivector::is_grade(int k) const {
  for (const auto& [b, c] : terms_)
    if (blade_grade(b) != k) return false;
  return true;
}

Multivector Multivector::grade_part(int k) const {
  Multivector out(form_);
  for (const auto& [b, c] : terms_)
    if (blade_grade(b) == k) out.add_term(b, c);
  return out;
}

Vector Multivector::grade1_coords() const {
  if (!is_grade(1)) throw std::domain_error("grade1_coords: not a grade-1 element");
  Vector out(form_.dim, Rational(0));
  for (const auto& [b, c] : terms_) out[std::countr_zero(b)] = c;
  return out;
}

void Multivector::add_term(Blade b, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string Multivector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    if (!first) os << " + ";
    os << c.get_str();
    if (b != 0) os << "*" << blade_to_string(b);
    first = false;
  }
  return os.str();
}

namespace {

void check_forms(const Multivector& x, const Multivector& y) {
  if (x.form() != y.form()) throw std::invalid_argument("mismatched quadratic forms");
}

}  // namespace

Multivector operator+(const Multivector& x, const Multivector& y) {
  check_forms(x, y);
  Multivector out = x;
  for (const auto& [b, c] : y.terms()) out.add_term(b, c);
  return out;
}

Multivector operator-(const Multivector& x, const Multivector& y) {
  check_forms(x, y);
  Multivector out = x;
  for (const auto& [b, c] : y.terms()) out.add_term(b, -c);
  return out;
}

Multivector operator-(const Multivector& x) {
  Multivector out(x.form());
  for (const auto& [b, c] : x.terms()) out.add_term(b, -c);
  return out;
}

Multivector operator*(const Rational& c, const Multivector& x) {
  Multivector out(x.form());
  for (const auto& [b, k] : x.terms()) out.add_term(b, c * k);
  return out;
}

Multivector gp(const Multivector& x, const Multivector& y) {
  check_forms(x, y);
  Multivector out(x.form());
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms())
      out.add_term(a ^ b, ca * cb * blade_product_coeff(a, b, x.form()));
  return out;
}

Multivector reverse(const Multivector& x) {
  Multivector out(x.form());
  for (const auto& [b, c] : x.terms()) {
    const int k = blade_grade(b);
    const bool flip = (k * (k - 1) / 2) % 2 != 0;
    out.add_term(b, flip ? -c : c);
  }
  return out;
}

Multivector embed_vector(const QuadForm& form, const Vector& v) {
  if (static_cast<int>(v.size()) != form.dim)
    throw std::invalid_argument("embed_vector: dimension mismatch");
  Multivector out(form);
  for (int i = 0; i < form.dim; ++i) out.add_term(Blade(1) << i, v[i]);
  return out;
}

Vector twisted_action(const Multivector& g, const Vector& v) {
  Multivector image = gp(gp(g, embed_vector(g.form(), v)), reverse(g));
  if (!image.is_grade(1) && !image.is_zero())
    throw std::domain_error("twisted_action: image is not grade-1");
  if (image.is_zero()) return Vector(g.form().dim, Rational(0));
  return image.grade1_coords();
}

}  // namespace spinlab
