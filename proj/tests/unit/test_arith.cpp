#include <random>
#include <set>

#include "doctest.h"
#include "modcong/arith.hpp"
#include "modcong/linalg.hpp"

using namespace modcong;

namespace {

using Vec = std::vector<std::uint64_t>;

// All elements of the row span, by brute force.
std::set<Vec> span_set(const ResidueMatrix& m) {
  const std::uint64_t q = m.modulus().value();
  std::set<Vec> cur{Vec(m.cols(), 0)};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::set<Vec> next;
    for (const auto& v : cur) {
      for (std::uint64_t a = 0; a < q; ++a) {
        Vec w = v;
        for (std::size_t j = 0; j < m.cols(); ++j) w[j] = (w[j] + a * m.at(i, j)) % q;
        next.insert(w);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

ResidueMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, const PrimePowerModulus& mod) {
  ResidueMatrix m(r, c, mod);
  std::uniform_int_distribution<std::uint64_t> d(0, mod.value() - 1);
  std::uniform_int_distribution<int> shape(0, 3);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::uint64_t v = d(rng);
      // bias towards non-units so torsion shows up
      if (shape(rng) == 0) v = v * mod.p() % mod.value();
      m.at(i, j) = v;
    }
  return m;
}

}  // namespace

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(PrimePowerModulus(4, 2), InputError);
  CHECK_THROWS_AS(PrimePowerModulus(3, 2), InputError);
  CHECK_THROWS_AS(PrimePowerModulus(5, 0), InputError);
  CHECK_THROWS_AS(PrimePowerModulus(5, 40), InputError);
  PrimePowerModulus m(5, 2);
  CHECK(m.value() == 25);
  CHECK(m.to_string() == "5^2");
  CHECK(m.valuation(0) == 2);
  CHECK(m.valuation(10) == 1);
}

TEST_CASE("residue arithmetic") {
  PrimePowerModulus m(5, 2);
  ResidueInt a(7, m), b(-3, m);
  CHECK((a + b).value() == 4);
  CHECK((a * b).value() == 4);  // -21 mod 25
  CHECK((a - b).value() == 10);
  CHECK((a * a.inverse()).value() == 1);
  CHECK_THROWS_AS(ResidueInt(10, m).inverse(), ArithmeticError);
  CHECK_THROWS_AS(a + ResidueInt(1, PrimePowerModulus(5, 3)), ArithmeticError);
  CHECK(ResidueInt(24, m).signed_value() == -1);
  CHECK(ResidueInt(12, m).reduce_to(1).value() == 2);
}

TEST_CASE("hensel_sqrt") {
  PrimePowerModulus m(5, 3);
  CHECK(hensel_sqrt(ResidueInt(1, m)).value() == 1);
  for (std::int64_t u = 1; u < 125; u += 5) {
    auto r = hensel_sqrt(ResidueInt(u, m));
    CHECK((r * r).value() == static_cast<std::uint64_t>(u));
    CHECK(r.value() % 5 == 1);
  }
  CHECK_THROWS_AS(hensel_sqrt(ResidueInt(2, m)), ArithmeticError);
}

TEST_CASE("quadratic_roots agrees with exhaustive search") {
  for (auto [p, n] : {std::pair{5ULL, 2}, std::pair{7ULL, 2}, std::pair{5ULL, 3}}) {
    PrimePowerModulus m(p, n);
    for (std::int64_t a1 = 0; a1 < static_cast<std::int64_t>(p * p); a1 += 3) {
      for (std::int64_t a0 = 0; a0 < static_cast<std::int64_t>(p * p); a0 += 2) {
        ResidueInt A1(a1, m), A0(a0, m);
        auto got = quadratic_roots(A1, A0);
        // oracle: roots mod p, distinct
        std::vector<std::uint64_t> roots_p;
        for (std::uint64_t x = 0; x < p; ++x)
          if ((x * x + static_cast<std::uint64_t>(a1) * x + static_cast<std::uint64_t>(a0)) % p == 0) roots_p.push_back(x);
        if (roots_p.size() != 2) {
          CHECK(!got.has_value());
          continue;
        }
        REQUIRE(got.has_value());
        auto [r1, r2] = *got;
        CHECK((r1 * r1 + A1 * r1 + A0).is_zero());
        CHECK((r2 * r2 + A1 * r2 + A0).is_zero());
        CHECK(r1.value() < r2.value());
        CHECK(r1.value() % p != r2.value() % p);
      }
    }
  }
  PrimePowerModulus m(5, 2);
  auto r = quadratic_roots(ResidueInt(14, m), ResidueInt(113, m));
  REQUIRE(r.has_value());
  CHECK(r->first.value() == 12);
  CHECK(r->second.value() == 24);
  CHECK(!quadratic_roots(ResidueInt(0, m), ResidueInt(2, m)).has_value());  // x^2 + 2 irreducible mod 5
}

TEST_CASE("mult_order agrees with brute force") {
  PrimePowerModulus m(5, 2);
  for (std::uint64_t a = 1; a < 25; ++a) {
    if (a % 5 == 0) continue;
    std::uint64_t k = 1, x = a;
    while (x != 1) {
      x = x * a % 25;
      ++k;
    }
    CHECK(mult_order(ResidueInt::from_canonical(a, m)) == k);
  }
  CHECK(mult_order(ResidueInt(1, m)) == 1);
  CHECK(mult_order(ResidueInt(13, m)) == 20);
  CHECK_THROWS_AS(mult_order(ResidueInt(5, m)), ArithmeticError);
}

TEST_CASE("modulus_exponent_bound") {
  CHECK(modulus_exponent_bound(true, 20, 5) == 26);
  CHECK(modulus_exponent_bound(false, 20, 5) == 1);
  CHECK(modulus_exponent_bound(true, 1, 5) == 2);
  CHECK(modulus_exponent_bound(true, 4, 5) == 6);
  CHECK_THROWS_AS(modulus_exponent_bound(true, 0, 5), InputError);
}

TEST_CASE("number theory helpers") {
  CHECK(is_prime(113));
  CHECK(!is_prime(1921));
  CHECK(prime_factors(1921) == std::vector<std::uint64_t>{17, 113});
  CHECK(legendre(2, 5) == -1);
  CHECK(legendre(4, 7) == 1);
  for (std::uint64_t p : {5ULL, 13ULL, 17ULL, 97ULL, 113ULL}) {
    for (std::uint64_t a = 1; a < p; ++a) {
      auto s = sqrt_mod_prime(a, p);
      CHECK(s.has_value() == (legendre(static_cast<std::int64_t>(a), p) == 1));
      if (s) CHECK(*s * *s % p == a);
    }
  }
}

TEST_CASE("Howell form spans the same module and is canonical") {
  std::mt19937_64 rng(20240611);
  for (auto [p, n] : {std::pair{5ULL, 2}, std::pair{7ULL, 1}, std::pair{5ULL, 3}}) {
    PrimePowerModulus mod(p, n);
    const int trials = mod.value() > 100 ? 15 : 40;
    for (int t = 0; t < trials; ++t) {
      std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % (mod.value() > 100 ? 2 : 3);
      auto m = random_matrix(rng, rows, cols, mod);
      auto h = howell_form(m);
      auto s = span_set(m);
      CHECK(span_set(h) == s);
      CHECK(module_length(h) == [&] {
        std::size_t len = 0;
        for (std::size_t sz = s.size(); sz > 1; sz /= p) ++len;
        return len;
      }());
      for (const auto& v : s) CHECK(howell_contains(h, v));
      // a different generating set of the same span gives the same form
      ResidueMatrix mixed(0, cols, mod);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::uint64_t> r(m.row(i).begin(), m.row(i).end());
        if (i + 1 < m.rows())
          for (std::size_t j = 0; j < cols; ++j) r[j] = (r[j] + 3 * m.at(i + 1, j)) % mod.value();
        mixed.append_row(r);
      }
      mixed.append_row(std::vector<std::uint64_t>(cols, 0));
      CHECK(howell_form(mixed) == h);
    }
  }
}

TEST_CASE("Howell kernel agrees with brute force") {
  std::mt19937_64 rng(77);
  PrimePowerModulus mod(5, 2);
  for (int t = 0; t < 40; ++t) {
    std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
    auto m = random_matrix(rng, rows, cols, mod);
    auto k = howell_kernel(m);
    std::set<Vec> ker;
    Vec v(cols, 0);
    for (;;) {
      if (m.apply(v) == Vec(rows, 0)) ker.insert(v);
      std::size_t j = 0;
      while (j < cols && ++v[j] == 25) v[j++] = 0;
      if (j == cols) break;
    }
    CHECK(span_set(k) == ker);
  }
}

TEST_CASE("n = 1 kernel is the field nullspace") {
  std::mt19937_64 rng(5);
  PrimePowerModulus mod(7, 1);
  for (int t = 0; t < 30; ++t) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
    auto m = random_matrix(rng, rows, cols, mod);
    auto k = howell_kernel(m);
    auto rank = howell_form(m).rows();
    CHECK(k.rows() == cols - rank);
    for (std::size_t i = 0; i < k.rows(); ++i) CHECK(m.apply(k.row(i)) == Vec(rows, 0));
  }
}

TEST_CASE("free rank") {
  PrimePowerModulus mod(5, 2);
  auto m = ResidueMatrix::from_rows({{5, 1}, {0, 5}}, mod);
  CHECK(free_rank(howell_form(m)) == 1);
  CHECK(module_length(howell_form(m)) == 2);
  auto z = ResidueMatrix::from_rows({{5, 0}, {0, 10}}, mod);
  CHECK(free_rank(z) == 0);
  CHECK(module_length(howell_form(z)) == 2);
  CHECK(free_rank(ResidueMatrix::identity(3, mod)) == 3);
}

TEST_CASE("FreeBasis coordinates") {
  ResidueRing R(PrimePowerModulus(5, 2));
  std::vector<std::vector<std::uint64_t>> vs{{5, 1, 0}, {1, 0, 2}, {6, 1, 2}};
  auto b = FreeBasis<ResidueRing>::from_vectors(R, 3, vs);
  CHECK(b.rank() == 2);
  auto c = b.coordinates({11, 2, 2});  // (5,1,0)*2 + (1,0,2)
  REQUIRE(c.has_value());
  CHECK(b.combine(*c) == std::vector<std::uint64_t>{11, 2, 2});
  CHECK(!b.coordinates({0, 0, 1}).has_value());
  CHECK_THROWS_AS(FreeBasis<ResidueRing>::from_vectors(R, 2, {{5, 0}}), ArithmeticError);
}
