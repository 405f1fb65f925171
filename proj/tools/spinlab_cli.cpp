// spinlab command-line interface: verification suites, approximation
// certificates, and width experiments, all emitting deterministic JSON.
//
// Exit codes: 0 ok, 1 identity/verification failure, 2 usage, 3 sampled-
// mode result. SPINLAB_CAP_PRIMES overrides the prime scan cap.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinlab/approx.hpp"
#include "spinlab/congruence.hpp"
#include "spinlab/steinberg.hpp"

using json = nlohmann::ordered_json;
using namespace spinlab;

namespace {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r.get_num() << '/' << r.get_den();
  return os.str();
}

Rational parse_rational(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

void write_atomic(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot write " + path);
}

json sorted_keys(json j) {
  if (!j.is_object()) return j;
  json out = json::object();
  std::map<std::string, json> m;
  for (auto& [k, v] : j.items()) m[k] = v;
  for (auto& [k, v] : m) out[k] = v;
  return out;
}

json certificate_json(const ApproxCertificate& c) {
  json j;
  j["ideal"] = c.I.m.get_str();
  json inputs = json::array();
  for (const auto& a : c.inputs) inputs.push_back(rat_str(a));
  j["inputs"] = inputs;
  j["t"] = c.t.get_str();
  json zs = json::array();
  for (const auto& z : c.zs)
    zs.push_back(sorted_keys(json{{"t", z.t.get_str()}, {"x", rat_str(z.x)}, {"y", rat_str(z.y)}}));
  j["torus_elements"] = zs;
  json congs = json::array();
  for (const auto& r : c.congruences)
    congs.push_back(sorted_keys(json{{"which", r.which},
                                     {"p", r.p.get_str()},
                                     {"k", r.k},
                                     {"zeta", r.zeta.get_str()},
                                     {"lhs", r.lhs.get_str()},
                                     {"rhs", r.rhs.get_str()}}));
  j["congruences"] = congs;
  json sups = json::array();
  for (const auto& S : c.supports) {
    json s = json::array();
    for (const auto& q : S) s.push_back(q.get_str());
    sups.push_back(s);
  }
  j["supports"] = sups;
  return sorted_keys(j);
}

json multivector_json(const Multivector& m) {
  json terms = json::object();
  std::map<std::string, std::string> sorted;
  for (const auto& [b, c] : m.terms()) sorted[blade_to_string(b)] = rat_str(c);
  for (const auto& [k, v] : sorted) terms[k] = v;
  return terms;
}

json spinpair_json(const SpinPair& sp) {
  json j;
  j["t"] = sp.t.get_str();
  j["g1"] = multivector_json(sp.g1.mv());
  j["g2"] = multivector_json(sp.g2.mv());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", separation(sp.g1));
  j["separation_g1"] = std::string(buf);
  std::snprintf(buf, sizeof buf, "%.12g", separation(sp.g2));
  j["separation_g2"] = std::string(buf);
  json us = json::array();
  for (const auto& u : sp.us) {
    json row = json::array();
    for (const auto& e : u) row.push_back(rat_str(e));
    us.push_back(row);
  }
  j["norm_t_vectors"] = us;
  return sorted_keys(j);
}

// ---- independent certificate verification: arith + tori only ----------

int verify_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("torus_elements")) {
    std::cerr << "not a certificate file\n";
    return 2;
  }
  std::vector<TorusElem> zs;
  try {
    for (const auto& zj : j["torus_elements"])
      zs.emplace_back(Int(zj["t"].get<std::string>()),
                      parse_rational(zj["x"].get<std::string>()),
                      parse_rational(zj["y"].get<std::string>()));
  } catch (const std::exception& e) {
    std::cerr << "torus element invalid: " << e.what() << "\n";
    return 1;
  }
  const Int t(j["t"].get<std::string>());
  for (const auto& cj : j["congruences"]) {
    const Int p(cj["p"].get<std::string>());
    const int k = cj["k"].get<int>();
    const Int zeta(cj["zeta"].get<std::string>());
    const Int lhs(cj["lhs"].get<std::string>());
    const Int rhs(cj["rhs"].get<std::string>());
    const int which = cj["which"].get<int>();
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    auto bad = [&](const std::string& why) {
      std::cerr << "congruence at " << p << "^" << k << ": " << why << "\n";
      return 1;
    };
    if (which < 0 || which >= static_cast<int>(zs.size())) return bad("bad index");
    if (((zeta * zeta + t) % pk) != 0) return bad("zeta^2 != -t");
    auto x = rational_mod(zs[which].x, pk);
    auto y = rational_mod(zs[which].y, pk);
    if (!x || !y) return bad("non-integral torus element");
    if (((*x + *y * zeta - lhs) % pk) != 0) return bad("lhs mismatch");
    if (lhs != rhs) return bad("lhs != rhs");
  }
  // supports disjoint, and honest: recompute torus_val at every listed prime
  std::vector<std::vector<Int>> sups;
  for (const auto& sj : j["supports"]) {
    std::vector<Int> S;
    for (const auto& q : sj) S.emplace_back(q.get<std::string>());
    sups.push_back(std::move(S));
  }
  for (std::size_t i = 0; i < sups.size(); ++i)
    for (const auto& q : sups[i])
      if (torus_val(zs[i], q) >= 0) {
        std::cerr << "support prime " << q << " has non-negative valuation\n";
        return 1;
      }
  if (sups.size() == 2)
    for (const auto& q : sups[0])
      for (const auto& q2 : sups[1])
        if (q == q2) {
          std::cerr << "supports overlap at " << q << "\n";
          return 1;
        }
  std::cout << "certificate verifies\n";
  return 0;
}

// ---- verification suites ----------------------------------------------

Rational rand_rat(std::mt19937_64& rng, long lo = -12, long hi = 12) {
  std::uniform_int_distribution<long> num(lo, hi);
  std::uniform_int_distribution<long> den(1, 9);
  long n = num(rng);
  if (n == 0) n = 1;
  Rational r(n, den(rng));
  r.canonicalize();
  return r;
}

int suite_coroots(int dim, std::uint64_t seed, json& rep) {
  std::mt19937_64 rng(seed);
  int n = 0;
  for (int it = 0; it < 100; ++it) {
    Rational t = rand_rat(rng), s = rand_rat(rng);
    while (t == 0 || t == 1 || t == -1) t = rand_rat(rng);
    while (s == 0 || s == 1 || s == -1) s = rand_rat(rng);
    for (int i = 1; i <= 2; ++i) {
      const auto prod = spin_mul(coroot(i, t, dim), coroot(i, s, dim));
      if (!(prod.mv() + Rational(-1) * coroot(i, t * s, dim).mv()).is_zero()) {
        rep["counterexample"] = "h" + std::to_string(i) + " multiplicativity";
        return 1;
      }
    }
    const auto h1 = coroot(1, t, dim), h2 = coroot(2, s, dim);
    if (!(gp(h1.mv(), h2.mv()) + Rational(-1) * gp(h2.mv(), h1.mv())).is_zero()) {
      rep["counterexample"] = "h1 h2 commutation";
      return 1;
    }
    if (adjoint_on_root(1, t, dim) != 2 || adjoint_on_root(2, s, dim) != 2) {
      rep["counterexample"] = "root pairing != 2";
      return 1;
    }
    ++n;
  }
  rep["pairs"] = n;
  return 0;
}

int suite_clifford(std::uint64_t seed, json& rep) {
  std::mt19937_64 rng(seed);
  const QuadForm fa = QuadForm::definite(6), fs = QuadForm::split(6);
  std::uniform_int_distribution<int> bl(0, 63);
  auto rand_mv = [&](const QuadForm& f) {
    Multivector m(f);
    for (int i = 0; i < 4; ++i) m.add_term(static_cast<Blade>(bl(rng)), rand_rat(rng));
    return m;
  };
  int n = 0;
  for (int it = 0; it < 200; ++it) {
    const QuadForm& f = (it % 2) ? fa : fs;
    Multivector a = rand_mv(f), b = rand_mv(f), c = rand_mv(f);
    if (!(gp(gp(a, b), c) + Rational(-1) * gp(a, gp(b, c))).is_zero()) {
      rep["counterexample"] = "associativity";
      return 1;
    }
    if (!(reverse(gp(a, b)) + Rational(-1) * gp(reverse(b), reverse(a))).is_zero()) {
      rep["counterexample"] = "reversal anti-automorphism";
      return 1;
    }
    Vector v(f.dim);
    for (auto& e : v) e = rand_rat(rng, -5, 5);
    Multivector ve = embed_vector(f, v);
    Multivector sq = gp(ve, ve);
    if (!sq.is_scalar() || sq.scalar_part() != f.eval(v)) {
      rep["counterexample"] = "vector square";
      return 1;
    }
    ++n;
  }
  rep["triples"] = n;
  return 0;
}

int suite_tori(std::uint64_t seed, json& rep) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> tdist(1, 40);
  int n = 0;
  for (int it = 0; it < 200; ++it) {
    const Int t = tdist(rng);
    auto z1 = conic_point(t, rand_rat(rng));
    auto z2 = conic_point(t, rand_rat(rng));
    auto z3 = conic_point(t, rand_rat(rng));
    auto lhs = torus_mul(torus_mul(z1, z2), z3);
    auto rhs = torus_mul(z1, torus_mul(z2, z3));
    if (!(lhs == rhs)) {
      rep["counterexample"] = "associativity";
      return 1;
    }
    if (!(torus_mul(z1, torus_inv(z1)) == torus_identity(t))) {
      rep["counterexample"] = "inverse";
      return 1;
    }
    ++n;
  }
  // rho multiplicativity at three precisions, t = 7, p = 11
  for (int k = 1; k <= 3; ++k) {
    auto triv = trivialize(7, 11, k);
    for (int it = 0; it < 30; ++it) {
      Rational u1 = rand_rat(rng), u2 = rand_rat(rng);
      auto z1 = conic_point(7, u1), z2 = conic_point(7, u2);
      Int pk = 1;
      for (int i = 0; i < k; ++i) pk *= 11;
      try {
        Int lhs = rho_apply(torus_mul(z1, z2), *triv);
        Int rhs = (rho_apply(z1, *triv) * rho_apply(z2, *triv)) % pk;
        if (lhs != rhs) {
          rep["counterexample"] = "rho multiplicativity";
          return 1;
        }
      } catch (const std::domain_error&) {
        // non-integral at 11: outside rho's domain
      }
    }
  }
  rep["elements"] = n;
  return 0;
}

int suite_steinberg(std::uint64_t seed, json& rep) {
  SymbolReport r = symbol_property_suite(seed, 99);
  rep["identity"] = r.identity_checks;
  rep["antisymmetry"] = r.antisymmetry_checks;
  rep["bimultiplicativity"] = r.bimultiplicativity_checks;
  rep["conjugation"] = r.conjugation_checks;
  rep["lift_independence"] = r.lift_independence_checks;
  rep["steinberg_relation"] = r.steinberg_relation_checks;
  rep["reflection_sign"] = r.reflection_sign_checks;
  if (!r.ok) rep["counterexample"] = r.counterexample;
  return r.ok ? 0 : 1;
}

ModMultivector parse_element(const std::string& spec, const QuadForm& form, const Int& m) {
  if (spec == "id") return ModMultivector{m, {{0, Int(1)}}};
  if (spec.size() == 3 && spec[0] == 'e' && isdigit(spec[1]) && isdigit(spec[2])) {
    const int i = spec[1] - '1', j = spec[2] - '1';
    if (i < 0 || j < 0 || i >= form.dim || j >= form.dim || i == j)
      throw std::invalid_argument("element index out of range");
    ModMultivector x{m, {{(Blade(1) << i) | (Blade(1) << j), Int(1)}}};
    if (!is_spin_mod(form, x))
      throw std::invalid_argument("element " + spec + " is not spin mod m (norm != 1)");
    return x;
  }
  throw std::invalid_argument("element spec must be 'id' or eNM, e.g. e13");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinlab: exact spin-group arithmetic, tori, and width experiments"};
  app.require_subcommand(1);

  Int prime_cap = 10000000;
  if (const char* env = std::getenv("SPINLAB_CAP_PRIMES")) prime_cap = Int(env);

  // verify
  auto* verify = app.add_subcommand("verify", "run an identity suite or recheck a certificate");
  std::string suite, cert_file, out_path;
  int dim = 6;
  std::uint64_t seed = 1;
  verify->add_option("suite", suite, "coroots|steinberg|clifford|tori");
  verify->add_option("--file", cert_file, "certificate JSON to recheck independently");
  verify->add_option("--dim", dim);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out_path);

  // approx
  auto* approx = app.add_subcommand("approx", "build a verified approximation certificate");
  std::string kind, a1s, a2s, ideal_s;
  approx->add_option("kind", kind, "unit|pair|spinpair")->required();
  approx->add_option("a1", a1s)->required();
  approx->add_option("a2_or_ideal", a2s)->required();
  approx->add_option("ideal", ideal_s);
  approx->add_option("--out", out_path);

  // width
  auto* width = app.add_subcommand("width", "conjugacy-width BFS in a finite quotient");
  std::string form_s, elem_s = "id";
  std::string mod_s;
  int cap = 10, wdim = 4;
  unsigned long enum_cap = 50000;
  width->add_option("form", form_s, "fa|fs")->required();
  width->add_option("modulus", mod_s)->required();
  width->add_option("--element", elem_s);
  width->add_option("--cap", cap);
  width->add_option("--dim", wdim);
  width->add_option("--enum-cap", enum_cap);
  width->add_option("--out", out_path);

  // report
  auto* report = app.add_subcommand("report", "run all suites and summarize");
  report->add_option("--seed", seed);
  report->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (!cert_file.empty()) return verify_certificate_file(cert_file);
      json rep;
      rep["suite"] = suite;
      rep["seed"] = seed;
      int rc;
      if (suite == "coroots") {
        if (dim < 6 || dim % 2 != 0) {
          std::cerr << "coroots need even dim >= 6\n";
          return 2;
        }
        rc = suite_coroots(dim, seed, rep);
      } else if (suite == "steinberg") {
        rc = suite_steinberg(seed, rep);
      } else if (suite == "clifford") {
        rc = suite_clifford(seed, rep);
      } else if (suite == "tori") {
        rc = suite_tori(seed, rep);
      } else {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
      }
      rep["ok"] = (rc == 0);
      if (!out_path.empty()) write_atomic(out_path, sorted_keys(rep));
      std::cout << sorted_keys(rep).dump(2) << "\n";
      return rc;
    }

    if (approx->parsed()) {
      json out;
      if (kind == "unit") {
        if (!ideal_s.empty()) {
          std::cerr << "usage: approx unit A I\n";
          return 2;
        }
        auto cert = approx_unit(parse_rational(a1s), OIdeal{Int(a2s)});
        out = certificate_json(cert);
      } else if (kind == "pair" || kind == "spinpair") {
        if (ideal_s.empty()) {
          std::cerr << "usage: approx " << kind << " A1 A2 I\n";
          return 2;
        }
        auto cert = approx_pair(parse_rational(a1s), parse_rational(a2s), OIdeal{Int(ideal_s)});
        out = certificate_json(cert);
        if (kind == "spinpair") {
          auto sp = torus_to_spin(cert.t, cert.zs[0], cert.zs[1]);
          out["spin_pair"] = spinpair_json(sp);
        }
      } else {
        std::cerr << "unknown approx kind '" << kind << "'\n";
        return 2;
      }
      if (out_path.empty()) out_path = "certificate.json";
      write_atomic(out_path, out);
      // re-verify through the independent path before declaring success
      return verify_certificate_file(out_path);
    }

    if (width->parsed()) {
      if (wdim < 2 || wdim > 8 || wdim % 2 != 0) {
        std::cerr << "width: dim must be even, 2..8\n";
        return 2;
      }
      const Int m(mod_s);
      if (m < 3 || m % 2 == 0) {
        std::cerr << "width: modulus must be odd, >= 3\n";
        return 2;
      }
      const QuadForm form = (form_s == "fa") ? QuadForm::definite(wdim)
                  : (form_s == "fs")         ? QuadForm::split(wdim)
                                             : throw std::invalid_argument("form must be fa|fs");
      ModMultivector x = parse_element(elem_s, form, m);
      auto spec = spin_quotient_generators(form, m);
      auto r = gcl_width_bfs(spec, x, cap, enum_cap);
      json j;
      j["group_order"] = r.group_order;
      j["class_size"] = r.class_size;
      j["subgroup_order"] = r.subgroup_order;
      j["width"] = r.width;
      j["layers"] = r.layers;
      j["mode"] = r.mode;
      j["cap_exceeded"] = r.cap_exceeded;
      if (r.width_with_center != -2) j["width_with_center"] = r.width_with_center;
      if (out_path.empty()) out_path = "width.json";
      write_atomic(out_path, sorted_keys(j));
      std::cout << sorted_keys(j).dump(2) << "\n";
      if (r.mode == "sampled") return 3;
      return r.cap_exceeded ? 1 : 0;
    }

    if (report->parsed()) {
      json rep;
      int rc = 0;
      json jc;
      rc |= suite_coroots(6, seed, jc);
      rep["coroots"] = jc;
      json js;
      rc |= suite_steinberg(seed, js);
      rep["steinberg"] = js;
      json jcl;
      rc |= suite_clifford(seed, jcl);
      rep["clifford"] = jcl;
      json jt;
      rc |= suite_tori(seed, jt);
      rep["tori"] = jt;
      rep["prime_cap"] = prime_cap.get_str();
      rep["ok"] = (rc == 0);
      if (!out_path.empty()) write_atomic(out_path, sorted_keys(rep));
      std::cout << sorted_keys(rep).dump(2) << "\n";
      return rc ? 1 : 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
