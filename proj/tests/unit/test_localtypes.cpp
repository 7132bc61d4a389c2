#include <random>

#include "doctest.h"
#include "modcong/localtypes.hpp"

using namespace modcong;

namespace {

using C = ReductionClass;

ResidueMatrix M(const PrimePowerModulus& m, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return ResidueMatrix::from_rows({{a, b}, {c, d}}, m);
}

IntegralLocalType random_type(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return integral::PrincipalSeries{rng() % 2 == 0, -static_cast<int>(rng() % 2)};
    case 1: return integral::Steinberg{static_cast<int>(rng() % 3)};
    default: return integral::Induced{rng() % 3 == 0, rng() % 2 == 0};
  }
}

const std::uint64_t kEll[] = {3, 7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 59, 61, 71, 79, 89, 101, 109, 139, 149};

}  // namespace

TEST_CASE("classify_residual examples") {
  PrimePowerModulus m5(5, 1);
  auto I = ResidueMatrix::identity(2, m5);
  // unramified, Frobenius eigenvalues of ratio q = 3
  TameLocalData a(7, M(m5, 3 * 2, 0, 0, 2), I);
  CHECK(classify_residual(a) == ResidualLocalType{residual::UnramifiedFrob{FrobShape::RegularSemisimple}});
  TameLocalData b(7, M(m5, 7, 0, 0, 1), M(m5, 1, 1, 0, 1));
  CHECK(classify_residual(b) == ResidualLocalType{residual::Steinberg{}});
  TameLocalData c(7, I, I);
  CHECK(classify_residual(c) == ResidualLocalType{residual::UnramifiedFrob{FrobShape::Scalar}});
  TameLocalData d(7, M(m5, 1, 1, 0, 1), I);
  CHECK(classify_residual(d) == ResidualLocalType{residual::UnramifiedFrob{FrobShape::Unipotent}});
  // tau = diag(2, 3) with 2^(l-1) = 3^(l-1) = 1 for l = 13, sigma diagonal: ramified principal series
  TameLocalData e(13, M(m5, 2, 0, 0, 1), M(m5, 2, 0, 0, 3));
  CHECK(classify_residual(e) == ResidualLocalType{residual::PrincipalSeries{true}});
  // tau = diag(2, 3) with 2^7 = 3 mod 5 for l = 7: swapping sigma; tau has trace 0 so the
  // projective image is a Klein four group and the representation is also induced from a ramified extension
  TameLocalData f(7, M(m5, 0, 1, 1, 0), M(m5, 2, 0, 0, 3));
  CHECK(classify_residual(f) == ResidualLocalType{residual::Induced{true}});
  // over F_7: tau = diag(3, 3^5) for l = 5
  PrimePowerModulus m7(7, 1);
  TameLocalData g(5, M(m7, 0, 1, 1, 0), M(m7, 3, 0, 0, 5));
  CHECK(classify_residual(g) == ResidualLocalType{residual::Induced{false}});
}

TEST_CASE("tame data validation") {
  PrimePowerModulus m5(5, 1), m25(5, 2);
  auto I = ResidueMatrix::identity(2, m5);
  CHECK_THROWS_AS(TameLocalData(7, M(m5, 3, 0, 0, 1), M(m5, 1, 1, 0, 1)), InputError);
  CHECK_THROWS_AS(TameLocalData(5, I, I), InputError);
  CHECK_THROWS_AS(TameLocalData(2, I, I), InputError);
  CHECK_THROWS_AS(TameLocalData(9, I, I), InputError);
  CHECK_THROWS_AS(TameLocalData(7, M(m5, 1, 0, 0, 0), I), InputError);
  CHECK_THROWS_AS(TameLocalData(7, I, ResidueMatrix::identity(2, m25)), InputError);
  // holds mod 5 but not mod 25
  CHECK_NOTHROW(TameLocalData(7, M(m5, 2, 0, 0, 1), M(m5, 1, 1, 0, 1)).reduce_mod_p());
  CHECK_THROWS_AS(TameLocalData(7, M(m25, 12, 0, 0, 1), M(m25, 1, 1, 0, 1)), InputError);
}

TEST_CASE("allowed_reductions table") {
  const integral::PrincipalSeries ps{true, 0};
  CHECK(allowed_reductions(ps, 7, 5) == ReductionSet{C::RamifiedPrincipalSeries});
  CHECK(allowed_reductions(ps, 11, 5) ==
        ReductionSet{C::RamifiedPrincipalSeries, C::UnramifiedPrincipalSeries, C::Steinberg});
  CHECK(allowed_reductions(integral::PrincipalSeries{false, 0}, 11, 5) == ReductionSet{C::UnramifiedPrincipalSeries});
  const integral::Induced ind{false, false};
  CHECK(allowed_reductions(ind, 19, 5) == ReductionSet{C::Induced, C::Steinberg, C::UnramifiedPrincipalSeries});
  CHECK(allowed_reductions(ind, 11, 5) == ReductionSet{C::Induced});
  for (auto l : kEll)
    CHECK(allowed_reductions(integral::Steinberg{0}, l, 5) == ReductionSet{C::Steinberg, C::UnramifiedPrincipalSeries});
  CHECK_THROWS_AS(allowed_reductions(ps, 5, 5), InputError);
  CHECK_THROWS_AS(allowed_reductions(integral::PrincipalSeries{true, 1}, 7, 5), InputError);
  CHECK_THROWS_AS(allowed_reductions(integral::Steinberg{-1}, 7, 5), InputError);
  // every type can keep its own shape
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto t = random_type(rng);
    auto s = allowed_reductions(t, kEll[i % 20], 5);
    std::visit([&](const auto& x) {
      using T = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<T, integral::Steinberg>) CHECK(s.count(C::Steinberg));
      if constexpr (std::is_same_v<T, integral::Induced>) CHECK(s.count(C::Induced));
    }, t);
  }
}

TEST_CASE("reduction constraints for unramified coefficients") {
  CHECK(integral_reduction_constraint(integral::PrincipalSeries{true, 0}, true, 11, 5) ==
        ReductionSet{C::RamifiedPrincipalSeries});
  CHECK(integral_reduction_constraint(integral::Induced{false, false}, true, 19, 5) == ReductionSet{C::Induced});
  CHECK(integral_reduction_constraint(integral::Steinberg{0}, true, 19, 5) ==
        allowed_reductions(integral::Steinberg{0}, 19, 5));
  CHECK(integral_reduction_constraint(integral::Induced{false, false}, false, 19, 5) ==
        allowed_reductions(integral::Induced{false, false}, 19, 5));
  CHECK_THROWS_AS(integral_reduction_constraint(integral::Steinberg{0}, true, 7, 3), InputError);
}

TEST_CASE("ramification_loss_possible") {
  CHECK(ramification_loss_possible(11, 5));
  CHECK_FALSE(ramification_loss_possible(17, 5));
  CHECK_FALSE(ramification_loss_possible(113, 5));
  CHECK(ramification_loss_possible(29, 7));
  CHECK_THROWS_AS(ramification_loss_possible(5, 5), InputError);
}

TEST_CASE("classification is invariant under conjugation and twist") {
  std::mt19937_64 rng(17);
  PrimePowerModulus m5(5, 1);
  int checked = 0;
  while (checked < 300) {
    auto l = kEll[rng() % 20];
    auto d = realize(random_type(rng), l, m5, rng);
    if (!d) continue;
    auto base = classify_residual(*d);
    ResidueMatrix g(2, 2, m5);
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g.at(i, j) = rng() % 5;
    } while ((g.at(0, 0) * g.at(1, 1) + 25 - g.at(0, 1) * g.at(1, 0)) % 5 == 0);
    CHECK(classify_residual(d->conjugated(g)) == base);
    // twist by a character: any unit on sigma, an (l-1)-th root of unity on tau
    std::int64_t s = 1 + static_cast<std::int64_t>(rng() % 4), t = 1;
    for (std::int64_t x = 1; x < 5; ++x)
      if (powmod(static_cast<std::uint64_t>(x), l - 1, 5) == 1 && rng() % 2) t = x;
    CHECK(classify_residual(d->twisted(s, t)) == base);
    ++checked;
  }
}

TEST_CASE("random integral types over Z/25 reduce as allowed") {
  std::mt19937_64 rng(2024);
  PrimePowerModulus m25(5, 2);
  int count = 0, honest = 0;
  std::set<C> seen;
  while (count < 400) {
    auto t = random_type(rng);
    auto l = kEll[rng() % 20];
    bool unram = rng() % 2 == 0;
    auto d = realize(t, l, m25, rng, unram);
    if (!d) continue;
    ++count;
    auto r = classify_residual(*d);
    seen.insert(reduction_class(r));
    CHECK_MESSAGE(admits(allowed_reductions(t, l, 5), r), to_string(t) << " at l=" << l << " -> " << to_string(r));
    if (unram) {
      ++honest;
      CHECK_MESSAGE(admits(integral_reduction_constraint(t, true, l, 5), r), to_string(t) << " l=" << l);
    }
  }
  CHECK(honest > 100);
  CHECK(seen.size() == 4);
}

TEST_CASE("realizations change type only through the lattice") {
  std::mt19937_64 rng(9);
  PrimePowerModulus m25(5, 2);
  // Steinberg with n = 0 stays Steinberg, n >= 1 becomes unramified
  for (auto l : kEll) {
    CHECK(reduction_class(classify_residual(*realize(integral::Steinberg{0}, l, m25, rng))) == C::Steinberg);
    CHECK(reduction_class(classify_residual(*realize(integral::Steinberg{1}, l, m25, rng))) ==
          C::UnramifiedPrincipalSeries);
  }
  // a ramified character that is 1 mod 5 needs l == 1 mod 5
  CHECK_FALSE(realize(integral::PrincipalSeries{true, -1}, 7, m25, rng).has_value());
  // over Z/125 a character 1 mod 5 but not mod 25 on inertia needs l == 1 mod 25
  std::set<C> from_ps;
  for (int i = 0; i < 40; ++i) {
    auto st = realize(integral::PrincipalSeries{true, -1}, 101, m25, rng);
    REQUIRE(st);
    from_ps.insert(reduction_class(classify_residual(*st)));
  }
  CHECK(from_ps.count(C::Steinberg));
  CHECK_FALSE(from_ps.count(C::Induced));
  // descending induced needs l == -1 mod 5
  CHECK_FALSE(realize(integral::Induced{false, true}, 11, m25, rng).has_value());
  auto ind = realize(integral::Induced{false, true}, 19, m25, rng);
  REQUIRE(ind);
  CHECK(reduction_class(classify_residual(*ind)) != C::Induced);
}
