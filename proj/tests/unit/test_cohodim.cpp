#include <random>

#include "doctest.h"
#include "modcong/cohodim.hpp"

using namespace modcong;

namespace {

using K = LocalKind;
using E = EllClass;

EllClass class_of(std::uint64_t l, std::uint64_t p) {
  return l % p == 1 ? E::One : (l % p == p - 1 ? E::MinusOne : E::Other);
}

}  // namespace

TEST_CASE("dimension table examples") {
  CHECK(dims({K::RamifiedPrincipalSeries, E::One}) == DimTriple{1, 2, 1});
  CHECK(dims({K::RamifiedPrincipalSeries, E::MinusOne}) == DimTriple{1, 1, 0});
  CHECK(dims({K::Steinberg, E::Other}) == DimTriple{0, 0, 0});
  CHECK(dims({K::Steinberg, E::MinusOne}) == DimTriple{0, 1, 1});
  CHECK(dims({K::UnramifiedScalar, E::One}) == DimTriple{3, 6, 3});
  CHECK(dims({K::UnramifiedRegular, E::Other, true}) == DimTriple{1, 2, 1});
  CHECK(dims({K::UnramifiedRegular, E::MinusOne, true}) == DimTriple{1, 3, 2});
  CHECK(dims({K::Induced, E::MinusOne, false, false}) == DimTriple{0, 1, 1});
  CHECK(dims({K::Induced, E::MinusOne, false, true}) == DimTriple{0, 0, 0});
  CHECK(dims({K::UnramifiedUnipotent, E::One}) == DimTriple{1, 2, 1});
  CHECK(aux_case_dims() == DimTriple{1, 2, 1});
  CHECK(aux_case_dims() == dims({K::UnramifiedRegular, E::Other, true}));
  CHECK_THROWS_AS(dims({K::UnramifiedRegular, E::One, true}), InputError);
  CHECK_THROWS_AS(dims({K::Steinberg, E::One, true}), InputError);
  CHECK_THROWS_AS(dims({K::Steinberg, E::One, false, true}), InputError);
  CHECK_THROWS_AS(ell_class(10, 5), InputError);
}

TEST_CASE("every table row satisfies the Euler relation and every case hits one row") {
  CHECK(dim_table().size() == 15);
  for (const auto& row : dim_table()) CHECK(row.dims.d1 == row.dims.d0 + row.dims.d2);
  int cases = 0;
  for (K k : {K::RamifiedPrincipalSeries, K::Steinberg, K::Induced, K::UnramifiedScalar, K::UnramifiedRegular,
              K::UnramifiedUnipotent})
    for (E e : {E::One, E::MinusOne, E::Other})
      for (bool ratio : {false, true})
        for (bool mram : {false, true}) {
          LocalCase c{k, e, ratio, mram};
          bool ok = true;
          try {
            validate(c);
          } catch (const InputError&) {
            ok = false;
          }
          if (!ok) continue;
          int hits = 0;
          for (const auto& row : dim_table()) hits += row.kind == k && row.matches(c);
          CHECK(hits == 1);
          auto d = dims(c);
          CHECK(d.d1 == d.d0 + d.d2);
          ++cases;
        }
  CHECK(cases == 23);
}

TEST_CASE("unramified oracle examples") {
  FiniteField F5(5, 1);
  auto e = [&](std::int64_t v) { return F5.from_int(v); };
  CHECK(dims_unramified_oracle(F5, {e(1), e(0), e(0), e(1)}, 11) == std::pair{3, 3});
  CHECK(dims_unramified_oracle(F5, {e(2), e(0), e(0), e(1)}, 7) == std::pair{1, 1});
  CHECK(dims_unramified_oracle(F5, {e(1), e(1), e(0), e(1)}, 11) == std::pair{1, 1});
  CHECK(dims_unramified_oracle(F5, {e(1), e(1), e(0), e(1)}, 7) == std::pair{1, 0});
  CHECK_THROWS_AS(dims_unramified_oracle(F5, {e(1), e(1), e(1), e(1)}, 7), InputError);
}

TEST_CASE("table agrees with the oracle on every unramified shape over F_5, F_7, F_25") {
  struct Field {
    std::uint64_t p;
    int k;
  };
  int compared = 0;
  for (auto [p, k] : {Field{5, 1}, Field{7, 1}, Field{5, 2}}) {
    FiniteField F(p, k);
    std::vector<FiniteField::Elt> units;
    for (std::uint64_t i = 1; i < F.size(); ++i) units.push_back(F.element(i));
    const auto zero = F.from_int(0), one = F.from_int(1);
    for (std::uint64_t l = 1; l < p; ++l) {
      const auto L = F.from_int(static_cast<std::int64_t>(l));
      auto check = [&](const FiniteField::Mat2& frob, LocalCase c) {
        c.ell = class_of(l, p);
        auto [d0, d2] = dims_unramified_oracle(F, frob, l);
        auto t = dims(c);
        CHECK(t.d0 == d0);
        CHECK(t.d2 == d2);
        ++compared;
      };
      for (auto a : units)
        for (auto b : units) {
          if (a == b) {
            check({a, zero, zero, a}, {K::UnramifiedScalar});
            check({a, one, zero, a}, {K::UnramifiedUnipotent});
            continue;
          }
          auto r = F.mul(a, F.inv(b));
          check({a, zero, zero, b}, {K::UnramifiedRegular, E::Other, r == L || F.inv(r) == L});
        }
      // semisimple Frobenius irreducible over F_p: companion matrices of x^2 - t x + d
      if (k == 1) {
        for (std::uint64_t t = 0; t < p; ++t)
          for (std::uint64_t d = 1; d < p; ++d) {
            std::int64_t disc = static_cast<std::int64_t>((t * t + 4 * p * p - 4 * d) % p);
            if (legendre(disc, p) != -1) continue;
            // ratio r: r + 1/r + 2 = t^2 / d
            std::uint64_t s2 = (l + *invmod(l, p) + 2) % p;
            bool ratio = mulmod(s2, d, p) == (t * t) % p;
            check({zero, F.from_int(-static_cast<std::int64_t>(d)), one, F.from_int(static_cast<std::int64_t>(t))},
                  {K::UnramifiedRegular, E::Other, ratio});
          }
      }
    }
  }
  CHECK(compared == 2898);
}

TEST_CASE("table agrees with a direct cohomology count on random tame data") {
  std::mt19937_64 rng(99);
  const std::uint64_t ells[] = {3, 11, 13, 19, 29, 31, 41, 43, 59, 61, 71, 89, 97, 101, 113, 139};
  std::set<K> kinds;
  int compared = 0;
  for (std::uint64_t p : {5ULL, 7ULL}) {
    PrimePowerModulus m(p, 1);
    for (int i = 0; i < 1500; ++i) {
      IntegralLocalType t;
      switch (rng() % 3) {
        case 0: t = integral::PrincipalSeries{rng() % 2 == 0, 0}; break;
        case 1: t = integral::Steinberg{static_cast<int>(rng() % 2)}; break;
        default: t = integral::Induced{rng() % 2 == 0, false}; break;
      }
      auto l = ells[rng() % 16];
      if (l % p == 0) continue;
      auto d = realize(t, l, m, rng);
      if (!d) continue;
      auto c = local_case(classify_residual(*d), *d);
      kinds.insert(c.kind);
      CHECK_MESSAGE(dims(c) == dims_oracle(*d), to_string(c.kind) << " l=" << l << " p=" << p);
      ++compared;
    }
  }
  CHECK(kinds.size() == 6);
  CHECK(compared > 1000);
}
