#include <cmath>

#include "doctest.h"
#include "modcong/ellcurve.hpp"
#include "modcong/modsym.hpp"

using namespace modcong;

namespace {

const WeierstrassCurve k17a1{{1, -1, 1, -1, -14}, "17a1", std::nullopt};
const WeierstrassCurve k11a1{{0, -1, 1, -10, -20}, "11a1", std::nullopt};
const WeierstrassCurve k37a1{{0, 0, 1, -1, 0}, "37a1", std::nullopt};
const WeierstrassCurve kCM{{0, 0, 0, -1, 0}, "y^2 = x^3 - x", std::nullopt};

// l + 1 - #E(F_l) by enumerating every (x, y) on the long form
std::int64_t ap_raw(const WeierstrassCurve& e, std::int64_t l) {
  auto md = [l](std::int64_t v) { return ((v % l) + l) % l; };
  std::int64_t A[5];
  for (int i = 0; i < 5; ++i) A[i] = md(e.a[i]);
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < l; ++x)
    for (std::int64_t y = 0; y < l; ++y) {
      std::int64_t lhs = md(y * y + md(A[0] * x) * y + A[2] * y);
      std::int64_t rhs = md(md(x * x) * x + md(A[1] * md(x * x)) + A[3] * x + A[4]);
      if (lhs == rhs) ++count;
    }
  return l + 1 - count;
}

std::int64_t to_i64(const BigInt& v) { return static_cast<std::int64_t>(v); }

// short model y^2 = x^3 - 27 c4 x - 54 c6, non-minimal at 2 and 3
WeierstrassCurve short_model(const WeierstrassCurve& e) {
  auto inv = invariants(e);
  return {{0, 0, 0, to_i64(-27 * inv.c4), to_i64(-54 * inv.c6)}, "", std::nullopt};
}

}  // namespace

TEST_CASE("17a1 coefficients") {
  CHECK(ap_of_prime(k17a1, 2) == -1);
  CHECK(ap_of_prime(k17a1, 113) == -14);
  CHECK(std::abs(ap_of_prime(k17a1, 3)) <= 3);
  CHECK(ap_of_prime(k17a1, 3) == ap_raw(k17a1, 3));
  CHECK(invariants(k17a1).disc == -83521);
  CHECK(reduction_type(k17a1, 5) == ReductionKind::Good);
  CHECK(reduction_type(k17a1, 17) != ReductionKind::Good);
  CHECK(reduction_type(k17a1, 17) != ReductionKind::Additive);
  CHECK_THROWS_AS(ap_of_prime(k17a1, 17), BadPrimeError);
  CHECK_THROWS_AS(ap_of_prime(k17a1, 15), InputError);
  CHECK_THROWS_AS(ap_of_prime(k17a1, 1009, 1000), ResourceBoundExceeded);
}

TEST_CASE("point counts agree with raw enumeration and satisfy Hasse") {
  for (const auto& e : {k17a1, k11a1, k37a1, kCM}) {
    for (auto l : primes_up_to(200)) {
      if (reduction_type(e, l) != ReductionKind::Good) continue;
      auto a = ap_of_prime(e, l);
      CHECK(a == ap_raw(e, static_cast<std::int64_t>(l)));
      CHECK(static_cast<double>(a * a) <= 4.0 * static_cast<double>(l));
      CHECK(a == ap_of_prime(e, l));
    }
  }
}

TEST_CASE("split and nonsplit multiplicative reduction") {
  // at odd multiplicative l the node is split iff -c6 is a square mod l
  for (const auto& e : {k17a1, k11a1, k37a1}) {
    auto inv = invariants(e);
    for (auto l : primes_up_to(40)) {
      auto k = reduction_type(e, l);
      if (k == ReductionKind::Good || l == 2) continue;
      REQUIRE(k != ReductionKind::Additive);
      auto r = static_cast<std::int64_t>(((-inv.c6) % l + l) % l);
      bool split = legendre(r, l) == 1;
      CHECK(split == (k == ReductionKind::SplitMultiplicative));
      CHECK(ap_any(e, l) == (split ? 1 : -1));
    }
  }
  CHECK(ap_any(k11a1, 11) == 1);
  CHECK(ap_any(k37a1, 37) == -1);
}

TEST_CASE("additive reduction and CM vanishing") {
  WeierstrassCurve e{{0, 0, 0, 0, -25}, "", std::nullopt};
  CHECK(reduction_type(e, 5) == ReductionKind::Additive);
  CHECK(ap_any(e, 5) == 0);
  CHECK(reduction_type(kCM, 2) == ReductionKind::Additive);
  CHECK_FALSE(conductor_of(kCM).has_value());
  for (auto l : primes_up_to(300))
    if (l % 4 == 3) CHECK(ap_of_prime(kCM, l) == 0);
}

TEST_CASE("non-minimal models reduce to the same data") {
  for (const auto& e : {k17a1, k11a1, k37a1}) {
    auto s = short_model(e);
    CHECK(reduction_type(s, 2) == reduction_type(e, 2));
    CHECK(reduction_type(s, 3) == reduction_type(e, 3));
    for (auto l : primes_up_to(60)) CHECK(ap_any(s, l) == ap_any(e, l));
    // scale further by 5
    WeierstrassCurve t{{0, 0, 0, s.a[3] * 625, s.a[4] * 15625}, "", std::nullopt};
    CHECK(reduction_type(t, 5) == reduction_type(e, 5));
    CHECK(ap_any(t, 5) == ap_any(e, 5));
    auto m = minimal_model_at(t, 5);
    BigInt dm = invariants(m).disc, de = invariants(e).disc;
    while (dm % 5 == 0 && de % 5 == 0) dm /= 5, de /= 5;
    CHECK((dm % 5 != 0 && de % 5 != 0));
  }
}

TEST_CASE("ap tables and conductors") {
  auto t = ap_table(k17a1, 3);
  CHECK(t.ap.size() == 2);
  CHECK(t.ap.at(2) == -1);
  CHECK(t.ap.at(3) == ap_raw(k17a1, 3));
  CHECK(t.bad_primes.empty());
  CHECK(t.source == ApTable::Source::Counted);
  auto t17 = ap_table(k17a1, 17);
  REQUIRE(t17.bad_primes.count(17) == 1);
  CHECK(t17.bad_primes.at(17) != ReductionKind::Additive);
  CHECK_THROWS_AS(ap_table(k17a1, 1), InputError);
  CHECK(conductor_of(k17a1) == 17u);
  CHECK(conductor_of(k11a1) == 11u);
  CHECK(conductor_of(k37a1) == 37u);
  WeierstrassCurve sing{{0, 0, 0, 0, 0}, "", std::nullopt};
  CHECK_THROWS_AS(validate_curve(sing), InputError);
}

TEST_CASE("counted traces equal Hecke eigenvalues on modular symbols") {
  for (auto [e, N] : {std::pair{k17a1, 17ULL}, std::pair{k11a1, 11ULL}}) {
    ModularSymbolSpace<RationalField> S(N, RationalField{});
    REQUIRE(S.cuspidal_dim() == 2);
    for (auto l : primes_up_to(50)) {
      if (l == N) continue;
      auto T = S.hecke_operator(HeckeLabel::T(l));
      CHECK(T.rows[0][0] == ap_of_prime(e, l));
      CHECK(T.rows[1][1] == ap_of_prime(e, l));
    }
    auto U = S.hecke_operator(HeckeLabel::U(N));
    CHECK(U.rows[0][0] == ap_any(e, N));
  }
}
