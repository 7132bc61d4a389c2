// Acceptance checks. `acceptance` runs all; `acceptance K` runs criterion K.
// One line per criterion: "criterion K <name>: PASS|FAIL (<detail>, <seconds> s)".
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "modcong/adjgroup.hpp"
#include "modcong/auxprimes.hpp"
#include "modcong/cohodim.hpp"
#include "modcong/congr.hpp"
#include "modcong/deformplan.hpp"
#include "modcong/example.hpp"
#include "modcong/localtypes.hpp"
#include "modcong/modsym.hpp"

using namespace modcong;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::uint64_t ipow(std::uint64_t p, int k) {
  std::uint64_t r = 1;
  while (k-- > 0) r *= p;
  return r;
}

// ---- 1, 2, 8 --------------------------------------------------------------

Outcome aux_113() {
  auto certs = search_auxiliary(curve_17a1(), 5, 2, 200, 17);
  const auto a113 = ap_of_prime(curve_17a1(), 113);
  for (const auto& c : certs)
    if (c.q == 113)
      return {c.sign == -1 && c.a_q == -14 && a113 == -14,
              "q=113 sign " + std::to_string(c.sign) + ", a_113=" + std::to_string(a113) + " by point count, " +
                  std::to_string(certs.size()) + " certificates to 200"};
  return {false, "113 not returned"};
}

Outcome frob_order() {
  auto pr = frob_order_pair(113, -14, 5, 2);
  PrimePowerModulus m(5, 2);
  auto r = quadratic_roots(ResidueInt(14, m), ResidueInt(113, m));
  bool roots = r && r->first.value() == 12 && r->second.value() == 24;
  std::ostringstream os;
  os << "orders (" << pr.first << ", " << pr.second << "), roots ";
  if (r) os << "(" << r->first.value() << ", " << r->second.value() << ")";
  else os << "none";
  return {pr.first == 4 && pr.second == 20 && roots, os.str()};
}

Outcome modulus_bound() {
  auto b = modulus_exponent_bound(true, 20, 5);
  return {b == 26, "bound " + std::to_string(b)};
}

// ---- 3 --------------------------------------------------------------------

EllClass class_of(std::uint64_t l, std::uint64_t p) {
  return l % p == 1 ? EllClass::One : (l % p == p - 1 ? EllClass::MinusOne : EllClass::Other);
}

Outcome cohomology_tables() {
  int rows = 0, euler_bad = 0;
  for (const auto& row : dim_table()) {
    ++rows;
    if (row.dims.d1 != row.dims.d0 + row.dims.d2) ++euler_bad;
  }
  int compared = 0, mismatches = 0;
  std::set<EllClass> classes;
  for (std::uint64_t p : {5u, 7u}) {
    FiniteField F(p, 1);
    const auto zero = F.from_int(0), one = F.from_int(1);
    std::vector<FiniteField::Elt> units;
    for (std::uint64_t i = 1; i < p; ++i) units.push_back(F.from_int(static_cast<std::int64_t>(i)));
    // l mod p runs over every nonzero class, so all three l-classes appear
    for (std::uint64_t l = 1; l < p; ++l) {
      classes.insert(class_of(l, p));
      const auto L = F.from_int(static_cast<std::int64_t>(l));
      auto check = [&](const FiniteField::Mat2& frob, LocalCase c) {
        c.ell = class_of(l, p);
        auto [d0, d2] = dims_unramified_oracle(F, frob, l);
        auto t = dims(c);
        ++compared;
        if (t.d0 != d0 || t.d2 != d2 || t.d1 != t.d0 + t.d2) ++mismatches;
      };
      // every Frobenius up to conjugacy: scalar, unipotent, split regular, nonsplit regular
      for (auto a : units)
        for (auto b : units) {
          if (a == b) {
            check({a, zero, zero, a}, {LocalKind::UnramifiedScalar});
            check({a, one, zero, a}, {LocalKind::UnramifiedUnipotent});
            continue;
          }
          auto r = F.mul(a, F.inv(b));
          check({a, zero, zero, b}, {LocalKind::UnramifiedRegular, EllClass::Other, r == L || F.inv(r) == L});
        }
      for (std::uint64_t t = 0; t < p; ++t)
        for (std::uint64_t d = 1; d < p; ++d) {
          std::int64_t disc = static_cast<std::int64_t>((t * t + 4 * p * p - 4 * d) % p);
          if (legendre(disc, p) != -1) continue;
          std::uint64_t s2 = (l + *invmod(l, p) + 2) % p;
          bool ratio = mulmod(s2, d, p) == (t * t) % p;
          check({zero, F.from_int(-static_cast<std::int64_t>(d)), one, F.from_int(static_cast<std::int64_t>(t))},
                {LocalKind::UnramifiedRegular, EllClass::Other, ratio});
        }
    }
  }
  std::ostringstream os;
  os << rows << " table rows (Euler failures " << euler_bad << "), " << compared
     << " unramified shapes over F_5, F_7 vs oracle, mismatches " << mismatches << ", l-classes " << classes.size();
  return {euler_bad == 0 && mismatches == 0 && classes.size() == 3 && compared > 0, os.str()};
}

// ---- 4 --------------------------------------------------------------------

std::uint64_t prime_with_valuation(std::uint64_t p, int k, int cap, std::mt19937_64& rng) {
  const std::uint64_t pk = ipow(p, k);
  for (;;) {
    std::uint64_t t = 1 + rng() % 4000;
    if (k < cap && t % p == 0) continue;
    std::uint64_t l = 1 + pk * t;
    if (is_prime(l)) return l;
  }
}

std::int64_t with_valuation(std::uint64_t p, int k, int m, std::mt19937_64& rng) {
  if (k >= m) return 0;
  std::uint64_t u;
  do u = 1 + rng() % ipow(p, m); while (u % p == 0);
  return static_cast<std::int64_t>((ipow(p, k) * u) % ipow(p, m));
}

Outcome lemma_v_suite() {
  // valuation patterns (x, y, l-1): 1 = above the minimum
  const int pat[7][3] = {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}, {1, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 0, 0}};
  std::mt19937_64 rng(4);
  long instances = 0, failures = 0, wrong_case = 0;
  int vacuous_m2 = 0;
  for (std::uint64_t p : {5u, 7u})
    for (int m : {2, 3, 4}) {
      PrimePowerModulus mod(p, m);
      if (m == 2) {
        // trivial residual data, y != 0: v(y) >= 1 > m - 2, so no instance exists; confirm
        // that lemma_v_element refuses and that no conjugator == 1 mod p moves rho at all
        for (int i = 0; i < 7; ++i) {
          std::uint64_t l = prime_with_valuation(p, 1, 2, rng);
          auto x = with_valuation(p, 1 + static_cast<int>(rng() % 2), m, rng), y = with_valuation(p, 1, m, rng);
          bool refused = false;
          try {
            lemma_v_element(ResidueInt(x, mod), ResidueInt(y, mod), l);
          } catch (const InputError&) {
            refused = true;
          }
          TameLocalData rho(l, ResidueMatrix::from_rows({{static_cast<std::int64_t>(l), x}, {0, 1}}, mod),
                            ResidueMatrix::from_rows({{1, y}, {0, 1}}, mod));
          bool trivial = true;
          for (std::uint64_t a = 0; a < p && trivial; ++a)
            for (std::uint64_t b = 0; b < p && trivial; ++b)
              for (std::uint64_t c = 0; c < p && trivial; ++c)
                for (std::uint64_t d = 0; d < p && trivial; ++d) {
                  auto C = ResidueMatrix::from_rows(
                      {{static_cast<std::int64_t>(1 + p * a), static_cast<std::int64_t>(p * b)},
                       {static_cast<std::int64_t>(p * c), static_cast<std::int64_t>(1 + p * d)}},
                      mod);
                  if (!(rho.conjugated(C).sigma() == rho.sigma() && rho.conjugated(C).tau() == rho.tau())) trivial = false;
                }
          if (refused && trivial) ++vacuous_m2;
        }
        continue;
      }
      for (int kase = 1; kase <= 7; ++kase)
        for (int i = 0; i < 500; ++i) {
          const int mu = 1 + static_cast<int>(rng() % (m - 2));
          auto above = [&](int hi) { return mu + 1 + static_cast<int>(rng() % (hi - mu)); };
          int vx = pat[kase - 1][0] ? above(m) : mu;
          int vy = pat[kase - 1][1] ? above(m - 1) : mu;
          int vl = pat[kase - 1][2] ? above(m) : mu;
          std::uint64_t l = prime_with_valuation(p, vl, m, rng);
          auto x = with_valuation(p, vx, m, rng), y = with_valuation(p, vy, m, rng);
          auto r = lemma_v_element(ResidueInt(x, mod), ResidueInt(y, mod), l);
          TameLocalData rho(l, ResidueMatrix::from_rows({{static_cast<std::int64_t>(l), x}, {0, 1}}, mod),
                            ResidueMatrix::from_rows({{1, y}, {0, 1}}, mod));
          ++instances;
          if (r.lemma_case != kase) ++wrong_case;
          if (!verify_adjustment(rho, r.v, r.C)) ++failures;
        }
    }
  std::ostringstream os;
  os << instances << " instances (7 cases x 500 x p in {5,7} x m in {3,4}), failures " << failures << ", wrong case "
     << wrong_case << "; m = 2 vacuous (no admissible instance, " << vacuous_m2 << "/14 sampled inputs refused with C acting trivially)";
  return {failures == 0 && wrong_case == 0 && instances == 7 * 500 * 4 && vacuous_m2 == 14, os.str()};
}

// ---- 5 --------------------------------------------------------------------

Outcome group_theory() {
  int passed = 0, total = 0;
  std::string failed;
  for (const auto& c : adj::run_suite()) {
    ++total;
    if (c.pass) ++passed;
    else failed += " [" + c.name + "]";
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " claims" + failed};
}

// ---- 6 --------------------------------------------------------------------

// genus of X0(N) from the classical closed form
std::uint64_t genus_closed_form(std::uint64_t N) {
  std::map<std::uint64_t, int> f;
  for (std::uint64_t n = N, d = 2; n > 1; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  auto kron = [](std::int64_t a, std::uint64_t p) -> int {  // (a/p), p odd; p = 2 handled by callers
    std::int64_t r = ((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    std::uint64_t e = (p - 1) / 2, base = static_cast<std::uint64_t>(r), acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return acc == 1 ? 1 : -1;
  };
  std::uint64_t mu = N;
  for (auto [p, e] : f) mu = mu / p * (p + 1);
  std::int64_t nu2 = 1, nu3 = 1;
  for (auto [p, e] : f) {
    if (p == 2) nu2 *= (e >= 2 ? 0 : 1);
    else nu2 *= 1 + kron(-1, p);
    if (p == 3) nu3 *= (e >= 2 ? 0 : 1);
    else if (p == 2) nu3 *= 0;  // (-3/2) = -1
    else nu3 *= 1 + kron(-3, p);
  }
  auto phi = [](std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        while (n % p == 0) n /= p;
        r -= r / p;
      }
    if (n > 1) r -= r / n;
    return r;
  };
  std::uint64_t cusps = 0;
  for (std::uint64_t d = 1; d <= N; ++d)
    if (N % d == 0) cusps += phi(std::gcd(d, N / d));
  std::int64_t twelve_g = 12 + static_cast<std::int64_t>(mu) - 3 * nu2 - 4 * nu3 - 6 * static_cast<std::int64_t>(cusps);
  return static_cast<std::uint64_t>(twelve_g / 12);
}

Outcome modsym_oracle() {
  ModularSymbolSpace<RationalField> S17(17, RationalField{});
  bool dim17 = S17.cuspidal_dim() == 2;
  int eig_bad = 0, eig_checked = 0;
  for (auto l : primes_up_to(50)) {
    if (l == 17) continue;
    auto T = S17.hecke_operator(HeckeLabel::T(l));
    const auto a = ap_of_prime(curve_17a1(), l);
    ++eig_checked;
    if (!(T.rows[0][0] == a && T.rows[1][1] == a && T.rows[0][1] == 0 && T.rows[1][0] == 0)) ++eig_bad;
  }
  int genus_bad = 0;
  for (std::uint64_t N = 1; N <= 200; ++N) {
    ModularSymbolSpace<RationalField> S(N, RationalField{});
    if (S.cuspidal_dim() != 2 * genus_closed_form(N)) ++genus_bad;
  }
  std::ostringstream os;
  os << "dim S(17) = " << S17.cuspidal_dim() << ", T_l = a_l on " << eig_checked - eig_bad << "/" << eig_checked
     << " good l <= 50, 2 genus mismatches for N <= 200: " << genus_bad;
  return {dim17 && eig_bad == 0 && genus_bad == 0, os.str()};
}

// ---- 7 --------------------------------------------------------------------

Outcome level_raising() {
  Newform f;
  f.level = 17;
  for (const auto& [l, a] : ap_table(curve_17a1(), 400).ap) (l == 17 ? f.bad[l] : f.ap[l]) = a;
  auto r = level_raising_witness(f, 113, -1, PrimePowerModulus(5, 2));
  std::ostringstream os;
  os << "level " << r.level << " mod " << r.modulus << ", T_l to " << r.sturm << ": joint free rank " << r.joint_dim
     << " (length " << r.joint_length << "), old " << r.old_dim << " (length " << r.old_length
     << "), verified " << (r.verified ? "yes" : "no") << "; supplementary new-part rank " << r.new_part_dim;
  return {r.joint_dim > 0 && r.new_witness && r.verified, os.str()};
}

// ---- 9 --------------------------------------------------------------------

Outcome reduction_conformance() {
  std::mt19937_64 rng(2024);
  const std::uint64_t ells[] = {3, 11, 13, 19, 29, 31, 41, 59, 61, 71, 79, 89, 101, 109, 131, 149, 151, 251};
  PrimePowerModulus m25(5, 2);
  int realized = 0, violations = 0, attempts = 0;
  std::set<ReductionClass> seen;
  while (realized < 200 && attempts < 100000) {
    ++attempts;
    IntegralLocalType t;
    switch (rng() % 3) {
      case 0: t = integral::PrincipalSeries{true, -static_cast<int>(rng() % 3)}; break;
      case 1: t = integral::Steinberg{static_cast<int>(rng() % 3)}; break;
      default: t = integral::Induced{rng() % 2 == 0, rng() % 2 == 0}; break;
    }
    auto l = ells[rng() % (sizeof(ells) / sizeof(ells[0]))];
    auto d = realize(t, l, m25, rng);
    if (!d) continue;
    ++realized;
    auto res = classify_residual(d->reduce_mod_p());
    seen.insert(reduction_class(res));
    if (!admits(allowed_reductions(t, l, 5), res)) ++violations;
  }
  std::ostringstream os;
  os << realized << " realized types over Z/25, violations " << violations << ", residual classes seen " << seen.size();
  return {realized == 200 && violations == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "auxiliary prime 113", 5, aux_113},
      {2, "Frobenius order (4, 20)", 1, frob_order},
      {3, "cohomology tables vs oracle", 5, cohomology_tables},
      {4, "conjugation lemma suite", 30, lemma_v_suite},
      {5, "PGL2(F5) group theory", 60, group_theory},
      {6, "modular symbols oracle", 120, modsym_oracle},
      {7, "level-raising witness at 1921 mod 25", 900, level_raising},
      {8, "modulus exponent bound 26", 1, modulus_bound},
      {9, "reduction-rule conformance", 10, reduction_conformance},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_pass = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.ok && s < c.limit_seconds;
    all_pass = all_pass && pass;
    std::cout << "criterion " << c.id << " " << c.name << ": " << (pass ? "PASS" : "FAIL") << " (" << o.detail << ", "
              << s << " s, limit " << c.limit_seconds << " s)" << std::endl;
  }
  return all_pass ? 0 : 1;
}
