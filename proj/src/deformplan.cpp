#include "modcong/deformplan.hpp"

#include <algorithm>

namespace modcong {

namespace {

using K = LocalKind;

CocycleGen gen(std::string name, std::array<std::int64_t, 4> s, std::array<std::int64_t, 4> t) {
  return {std::move(name), s, t, false};
}

CocycleGen combine(std::string name, const std::vector<std::pair<std::int64_t, CocycleGen>>& terms, std::uint64_t p) {
  CocycleGen r{std::move(name), {}, {}, false};
  const auto P = static_cast<std::int64_t>(p);
  for (const auto& [c, g] : terms)
    for (int i = 0; i < 4; ++i) {
      r.sigma[i] = floor_mod(r.sigma[i] + c * g.sigma[i], P);
      r.tau[i] = floor_mod(r.tau[i] + c * g.tau[i], P);
    }
  return r;
}

// valuation of l - 1 capped at m
int ell_valuation(std::uint64_t l, std::uint64_t p, int m) {
  std::uint64_t v = l - 1;
  int k = 0;
  while (k < m && v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

// a / b for elements of equal valuation k, as a unit mod p
std::int64_t unit_ratio(std::uint64_t a, std::uint64_t b, int k, std::uint64_t p) {
  std::uint64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  return static_cast<std::int64_t>(mulmod((a / pk) % p, *invmod((b / pk) % p, p), p));
}

bool upper_unipotent_shape(const ResidueMatrix& m) { return m.at(0, 0) == 1 && m.at(1, 0) == 0 && m.at(1, 1) == 1; }

ResidueMatrix values(const std::array<std::int64_t, 4>& a, const PrimePowerModulus& m) {
  return ResidueMatrix::from_rows({{a[0], a[1]}, {a[2], a[3]}}, m);
}

ResidueMatrix inverse2(const ResidueMatrix& c) {
  const auto& mod = c.modulus();
  const std::uint64_t q = mod.value();
  std::uint64_t det = (mulmod(c.at(0, 0), c.at(1, 1), q) + q - mulmod(c.at(0, 1), c.at(1, 0), q)) % q;
  auto d = invmod(det, q);
  if (!d) throw InputError("conjugator is not invertible");
  ResidueMatrix r(2, 2, mod);
  r.at(0, 0) = mulmod(c.at(1, 1), *d, q);
  r.at(1, 1) = mulmod(c.at(0, 0), *d, q);
  r.at(0, 1) = mulmod((q - c.at(0, 1)) % q, *d, q);
  r.at(1, 0) = mulmod((q - c.at(1, 0)) % q, *d, q);
  return r;
}

}  // namespace

CocycleGen cocycle_h() { return gen("h", {1, 0, 0, -1}, {0, 0, 0, 0}); }
CocycleGen cocycle_j() { return gen("j", {0, 1, 0, 0}, {0, 0, 0, 0}); }
CocycleGen cocycle_u1() { return gen("u1", {0, 1, 0, 0}, {0, 0, 0, 0}); }
CocycleGen cocycle_u2() { return gen("u2", {0, 0, 0, 0}, {0, 1, 0, 0}); }
CocycleGen cocycle_u() { return gen("u", {0, 0, 0, 0}, {0, 1, 0, 0}); }
CocycleGen cocycle_g1() { return gen("g1", {0, 0, 1, 0}, {0, 0, 0, 0}); }
CocycleGen cocycle_g2() { return gen("g2", {1, 0, 0, -1}, {0, 0, 0, 0}); }
CocycleGen cocycle_g3() { return gen("g3", {0, 0, 0, 0}, {1, 0, 0, -1}); }

std::string to_string(PlanEntry::Status s) {
  switch (s) {
    case PlanEntry::Status::Planned: return "planned";
    case PlanEntry::Status::Delegated: return "delegated";
    case PlanEntry::Status::Uncovered: return "uncovered";
  }
  return "?";
}

PlanEntry plan_at_p() {
  PlanEntry e;
  e.status = PlanEntry::Status::Delegated;
  e.note = "l = p: C_p from the local-at-p constructions in the literature; rho_p lies in C_p";
  return e;
}

PlanEntry plan_for(const LocalCase& c, const PlanOptions& opts) {
  PlanEntry e;
  e.local = c;
  e.dims = dims(c);
  const bool one = c.ell == EllClass::One, minus_one = c.ell == EllClass::MinusOne;
  auto uncovered = [&](std::string why) {
    e.status = PlanEntry::Status::Uncovered;
    e.note = std::move(why);
    return e;
  };
  switch (c.kind) {
    case K::RamifiedPrincipalSeries:
      if (!one) {
        e.family = {"*", "*", false};
        e.note = "unobstructed: C_l is every lift, N_l the full H^1";
        e.N_basis = {cocycle_h()};
      } else if (opts.nonrational_frobenius) {
        // (a - b) C h C^-1 with C = (-b -a; 1 1), in terms of s = a + b, n = a b
        auto [s, n] = *opts.nonrational_frobenius;
        e.family = {"C diag(psi1 g, psi2 g^-1) C^-1", "C diag(psi1, psi2) C^-1", false};
        e.N_basis = {gen("(a-b)ChC^-1", {-s, -2 * n, 2, s}, {0, 0, 0, 0})};
      } else {
        e.family = {"diag(psi1 g, psi2 g^-1)", "diag(psi1, psi2)", false};
        e.N_basis = {cocycle_h()};
      }
      return e;
    case K::Steinberg:
      if (one) {
        e.family = {"(l *; 0 1)", "(1 *; 0 1)", false};
        e.N_basis = {cocycle_j()};
      } else {
        e.family = {"=", "=", true};
        e.note = minus_one ? "N_l = 0, the full H^1 adjusts" : "unique lift at every step";
      }
      return e;
    case K::Induced:
      e.family = {"=", "=", true};
      e.note = minus_one && !c.M_ramified ? "N_l = 0, the full H^1 adjusts" : "unique lift at every step";
      return e;
    case K::UnramifiedScalar: {
      if (!one) return uncovered("a Steinberg lift of a scalar Frobenius needs l == 1 mod p");
      e.family = {"(l *; 0 1)", "(1 *; 0 1)", false};
      CocycleGen v{"v", {}, {}, true};
      if (opts.lift_xy) {
        auto r = lemma_v_element(opts.lift_xy->first, opts.lift_xy->second, opts.l);
        v = r.v;
        v.name = "v";
      }
      e.N_basis = {cocycle_u1(), cocycle_u2(), v};
      return e;
    }
    case K::UnramifiedRegular:
      if (!c.ell_is_ratio) return uncovered("no Steinberg lift: l is not a Frobenius eigenvalue ratio");
      e.family = {"=", "(1 *; 0 1)", false};
      e.N_basis = {cocycle_u()};
      return e;
    case K::UnramifiedUnipotent:
      if (!one) return uncovered("a Steinberg lift of a unipotent Frobenius needs l == 1 mod p");
      e.family = {"=", "(1 *; 0 1)", false};
      e.N_basis = {cocycle_u()};
      return e;
  }
  return uncovered("unknown case");
}

int lemma_v_case(const ResidueInt& x, const ResidueInt& y, std::uint64_t l) {
  const auto& mod = x.modulus();
  if (!(y.modulus() == mod)) throw InputError("x and y over different moduli");
  if (y.is_zero()) throw InputError("y must be nonzero");
  const int m = mod.n();
  const int vx = x.valuation(), vy = y.valuation(), vl = ell_valuation(l, mod.p(), m);
  const int mu = std::min({vx, vy, vl});
  const bool X = vx == mu, Y = vy == mu, L = vl == mu;
  if (Y && !X && !L) return 1;
  if (X && !Y && !L) return 2;
  if (L && !X && !Y) return 3;
  if (Y && L && !X) return 4;
  if (Y && X && !L) return 5;
  if (X && L && !Y) return 6;
  return 7;
}

LemmaVResult lemma_v_element(const ResidueInt& x, const ResidueInt& y, std::uint64_t l) {
  const auto& mod = x.modulus();
  const std::uint64_t p = mod.p();
  const int m = mod.n();
  if (!is_prime(l) || l == p) throw InputError("l must be a prime different from p");
  if (l % p != 1) throw InputError("l must be 1 mod p");
  if (m < 2) throw InputError("m must be at least 2");
  if (!(y.modulus() == mod)) throw InputError("x and y over different moduli");
  if (y.is_zero()) throw InputError("y must be nonzero");

  const int kase = lemma_v_case(x, y, l);
  const int vx = x.valuation(), vy = y.valuation(), vl = ell_valuation(l, p, m);
  if (std::min({vx, vy, vl}) > m - 2) throw InputError("no conjugator: min(v(x), v(y), v(l-1)) exceeds m-2");
  const std::uint64_t q = mod.value();
  const std::uint64_t lm1 = (l - 1) % q;
  const std::uint64_t q1 = mod.power(m - 1);
  // gamma with gamma * a == target * p^(m-2) mod p^(m-1), a of valuation k <= m-2
  auto solve = [&](std::uint64_t a, int k, std::int64_t target) {
    std::uint64_t unit = (a / mod.power(k)) % q1;
    std::uint64_t g = mulmod(*invmod(unit, q1), mod.power(m - 2 - k), q1);
    return target > 0 ? g : (q1 - g) % q1;
  };
  std::uint64_t gamma = 0;
  CocycleGen v;
  switch (kase) {
    case 1:
      gamma = solve(y.value(), vy, 1);
      v = cocycle_g3();
      break;
    case 2:
      gamma = solve(x.value(), vx, 1);
      v = cocycle_g2();
      break;
    case 3:
      gamma = solve(lm1, vl, -1);
      v = cocycle_g1();
      break;
    case 4: {
      auto lam = unit_ratio(y.value(), lm1, vl, p);
      gamma = solve(lm1, vl, -1);
      v = combine("g1 - lambda g3", {{1, cocycle_g1()}, {-lam, cocycle_g3()}}, p);
      break;
    }
    case 5: {
      auto lam = unit_ratio(y.value(), x.value(), vx, p);
      gamma = solve(x.value(), vx, 1);
      v = combine("g2 + lambda g3", {{1, cocycle_g2()}, {lam, cocycle_g3()}}, p);
      break;
    }
    case 6: {
      auto lam = unit_ratio(x.value(), lm1, vl, p);
      gamma = solve(lm1, vl, -1);
      v = combine("g1 - lambda g2", {{1, cocycle_g1()}, {-lam, cocycle_g2()}}, p);
      break;
    }
    default: {
      auto l1 = unit_ratio(x.value(), lm1, vl, p), l2 = unit_ratio(y.value(), lm1, vl, p);
      gamma = solve(lm1, vl, -1);
      v = combine("g1 - lambda1 g2 - lambda2 g3", {{1, cocycle_g1()}, {-l1, cocycle_g2()}, {-l2, cocycle_g3()}}, p);
      break;
    }
  }
  ResidueMatrix C = ResidueMatrix::identity(2, mod);
  C.at(1, 0) = mulmod(p, gamma, q);  // alpha = delta = 0, beta = 0
  return {kase, v, C};
}

bool verify_adjustment(const TameLocalData& rho, const CocycleGen& v, const ResidueMatrix& C) {
  const auto& mod = rho.modulus();
  const int m = mod.n();
  if (m < 2) throw InputError("verify_adjustment needs m >= 2");
  const auto& s = rho.sigma();
  const auto& t = rho.tau();
  if (!(s.at(0, 0) == rho.l() % mod.value() && s.at(1, 0) == 0 && s.at(1, 1) == 1) || !upper_unipotent_shape(t))
    throw InputError("rho is not of the shape ((l x; 0 1), (1 y; 0 1))");
  if (C.rows() != 2 || C.cols() != 2 || !(C.modulus() == mod)) throw InputError("C must be a 2x2 matrix mod p^m");
  const std::uint64_t p = mod.p();
  if (C.at(0, 0) % p != 1 || C.at(1, 1) % p != 1 || C.at(0, 1) % p != 0 || C.at(1, 0) % p != 0) return false;
  auto Ci = inverse2(C);
  const std::uint64_t pm1 = mod.power(m - 1);
  auto I = ResidueMatrix::identity(2, mod);
  for (int g = 0; g < 2; ++g) {
    const ResidueMatrix& r = g == 0 ? s : t;
    ResidueMatrix adj = I + values(g == 0 ? v.sigma : v.tau, mod).scaled(pm1);
    if (!(Ci * r * C == adj * r)) return false;
  }
  return true;
}

TameLocalData act(const CocycleGen& u, std::int64_t c, int k, const TameLocalData& rho) {
  const auto& mod = rho.modulus();
  auto I = ResidueMatrix::identity(2, mod);
  const std::uint64_t f = mulmod(mod.reduce(c), k >= mod.n() ? 0 : mod.power(k), mod.value());
  auto s = (I + values(u.sigma, mod).scaled(f)) * rho.sigma();
  auto t = (I + values(u.tau, mod).scaled(f)) * rho.tau();
  return {rho.l(), s, t};
}

bool in_family(const PlanEntry& e, const TameLocalData& rho, const TameLocalData& reference) {
  auto match = [&](const std::string& pat, const ResidueMatrix& a, const ResidueMatrix& ref, bool is_sigma) {
    if (pat == "*") return true;
    if (pat == "=") return a == ref;
    if (pat == "(1 *; 0 1)") return upper_unipotent_shape(a);
    if (pat == "(l *; 0 1)")
      return a.at(0, 0) == rho.l() % a.modulus().value() && a.at(1, 0) == 0 && a.at(1, 1) == 1;
    (void)is_sigma;
    throw InputError("family pattern not checkable: " + pat);
  };
  return match(e.family.sigma, rho.sigma(), reference.sigma(), true) &&
         match(e.family.tau, rho.tau(), reference.tau(), false);
}

bool cq_membership(const TameLocalData& data, std::uint64_t q) {
  const auto& mod = data.modulus();
  const std::uint64_t p = mod.p();
  const auto& s = data.sigma();
  const auto& t = data.tau();
  return upper_unipotent_shape(t) && t.at(0, 1) % p == 0 && s.at(0, 0) == q % mod.value() && s.at(1, 0) == 0 &&
         s.at(1, 1) == 1 && s.at(0, 1) % p == 0;
}

}  // namespace modcong
