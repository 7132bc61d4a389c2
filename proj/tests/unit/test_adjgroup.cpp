#include <algorithm>
#include <ostream>
#include <random>

#include "doctest.h"
#include "modcong/adjgroup.hpp"
#include "modcong/arith.hpp"

using namespace modcong;
using namespace modcong::adj;

namespace {

const std::vector<Vec> kV2{{3, 1, 0}, {3, 0, 1}};
const std::vector<Vec> kV1{{4, 1, 1}};

Subgroup whole() {
  Subgroup s;
  s.set();
  return s;
}

}  // namespace

TEST_CASE("PGL2(F5) tables") {
  CHECK(elements().size() == 120);
  Subgroup all = whole();
  CHECK(generate({index_of({1, 1, 0, 1}), index_of({0, 1, 1, 0}), index_of({2, 0, 0, 1})}) == all);
  for (Elt g = 0; g < 120; ++g) {
    CHECK(mul(g, inv(g)) == identity());
    CHECK(mul(identity(), g) == g);
  }
  CHECK(index_of({2, 4, 4, 4}) == index_of({1, 2, 2, 2}));
  CHECK_THROWS_AS(canonical({1, 2, 2, 4}), InputError);
}

TEST_CASE("adjoint action") {
  const Vec m{4, 1, 1};
  CHECK(adjoint_action(identity(), m) == m);
  CHECK(adjoint_action(index_of({3, 2, 2, 2}), m) == m);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Elt g = static_cast<Elt>(rng() % 120);
    Vec a{int(rng() % 5), int(rng() % 5), int(rng() % 5)}, b{int(rng() % 5), int(rng() % 5), int(rng() % 5)};
    CHECK(adjoint_action(g, add(a, b)) == add(adjoint_action(g, a), adjoint_action(g, b)));
  }
  // group action on a basis, all pairs
  const std::vector<Vec> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  int bad = 0;
  for (Elt g = 0; g < 120; ++g)
    for (Elt h = 0; h < 120; ++h)
      for (const auto& e : basis)
        if (adjoint_action(mul(g, h), e) != adjoint_action(g, adjoint_action(h, e))) ++bad;
  CHECK(bad == 0);
  // faithful
  for (Elt g = 0; g < 120; ++g)
    if (g != identity())
      CHECK(std::any_of(basis.begin(), basis.end(), [&](const Vec& e) { return adjoint_action(g, e) != e; }));
}

TEST_CASE("S3 x C2 decomposition and stabilizer") {
  auto gens = s3xc2_generators();
  Subgroup H = generate(gens);
  CHECK(H.count() == 12);
  CHECK(isomorphism_label(H) == "S3xC2");
  CHECK(invariant_decomposition_check(gens, kV1, kV2));
  CHECK(invariant_decomposition_check({identity()}, kV1, kV2));
  CHECK_FALSE(invariant_decomposition_check(members(whole()), kV1, kV2));
  CHECK_THROWS_AS(invariant_decomposition_check(gens, kV1, {{4, 1, 1}, {3, 1, 0}}), InputError);

  Subgroup st = stabilizer_in(H, {4, 1, 1});
  CHECK(st.count() == 6);
  CHECK(isomorphism_label(st) == "C6");
  CHECK(stabilizer_in(H, {0, 0, 0}) == H);
  Subgroup full = stabilizer_in(whole(), {4, 1, 1});
  CHECK(120 % full.count() == 0);
  CHECK((full & st) == st);
  CHECK_FALSE(acts_trivially(H, kV1));
  CHECK(acts_trivially(st, kV1));
}

TEST_CASE("normality lemma") {
  Subgroup H = generate(s3xc2_generators());
  Subgroup C6 = stabilizer_in(H, {4, 1, 1});
  CHECK(normality_check(C6, kV1, kV2));
  CHECK_FALSE(normality_check(H, kV1, kV2));
  Subgroup one;
  one.set(identity());
  CHECK(normality_check(one, kV1, kV2));
  // iff over every subgroup of S3 x C2
  for (Elt a : members(H))
    for (Elt b : members(H)) {
      Subgroup K = generate({a, b});
      CHECK(normality_check(K, kV1, kV2) == acts_trivially(K, kV1));
    }
  CHECK(semidirect_normal(C6, kV2, H));
}

TEST_CASE("subgroups of order prime to 5") {
  auto labels = subgroups_prime_to_5();
  const std::vector<std::string> expect{"1", "C2", "C2xC2", "C4", "C3", "C6", "S3", "D8", "S3xC2", "A4", "S4"};
  CHECK(labels.size() == 11);
  for (const auto& l : expect) CHECK(std::find(labels.begin(), labels.end(), l) != labels.end());
  for (const auto& c : subgroup_classes_prime_to_5()) CHECK(c.order % 5 != 0);
  // S5 has 19 conjugacy classes of subgroups; C5, D10, F20, A5, S5 have order divisible by 5
  CHECK(subgroup_classes_prime_to_5().size() == 19 - 5);
}

TEST_CASE("the full action is irreducible") {
  CHECK(invariant_subspaces(members(whole())).empty());
  CHECK(invariant_subspaces(s3xc2_generators()).size() == 2);
  CHECK(invariant_subspaces({identity()}).size() == 62);
}
