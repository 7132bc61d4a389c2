#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modcong/arith.hpp"
#include "modcong/cohodim.hpp"
#include "modcong/localtypes.hpp"

namespace modcong {

// A cocycle in H^1(G_l, Ad0) given by its values on (sigma_l, tau_l); zero on wild inertia.
struct CocycleGen {
  std::string name;
  std::array<std::int64_t, 4> sigma{};  // row-major, trace zero
  std::array<std::int64_t, 4> tau{};
  bool symbolic = false;  // values depend on lift data not supplied
};

// Shape of the members of C_l on sigma and tau; "*" is free, "=" means equal to rho_l.
struct FamilyDescriptor {
  std::string sigma;
  std::string tau;
  bool single_member = false;  // C_l = {rho_l}
};

struct PlanEntry {
  enum class Status { Planned, Delegated, Uncovered };
  Status status = Status::Planned;
  LocalCase local;
  DimTriple dims;
  FamilyDescriptor family;
  std::vector<CocycleGen> N_basis;
  std::string note;
};

struct PlanOptions {
  // Ramified principal series with l == 1 whose Frobenius eigenvalues are not in
  // W(F): their trace and norm.
  std::optional<std::pair<std::int64_t, std::int64_t>> nonrational_frobenius;
  // Unramified scalar case: the lift rho_n(sigma) = (l x; 0 1), rho_n(tau) = (1 y; 0 1) mod p^m,
  // used to make the conjugating element explicit.
  std::optional<std::pair<ResidueInt, ResidueInt>> lift_xy;
  std::uint64_t l = 0;
};

PlanEntry plan_for(const LocalCase& c, const PlanOptions& opts = {});
// l = p: C_p is taken from the literature; only rho_p in C_p is recorded.
PlanEntry plan_at_p();

// Named generators.
CocycleGen cocycle_h();
CocycleGen cocycle_j();
CocycleGen cocycle_u1();
CocycleGen cocycle_u2();
CocycleGen cocycle_u();
CocycleGen cocycle_g1();
CocycleGen cocycle_g2();
CocycleGen cocycle_g3();

struct LemmaVResult {
  int lemma_case = 0;  // 1..7 in the order of the proof
  CocycleGen v;
  ResidueMatrix C;
};

// Which of the seven valuation patterns (x, y, l - 1) falls in; the minimum
// must be attained and finite. Pure selection, no hypotheses beyond y != 0.
int lemma_v_case(const ResidueInt& x, const ResidueInt& y, std::uint64_t l);

// Element v and conjugator C (== 1 mod p) with C^-1 rho_m C = (1 + p^(m-1) v) rho_m for
// rho_m(sigma) = (l x; 0 1), rho_m(tau) = (1 y; 0 1) mod p^m. Requires y != 0, l == 1 mod p
// and min(v(x), v(y), v(l-1)) <= m-2. The identity holds when x == y == 0 mod p
// (trivial residual representation); outside that the selection is still returned.
LemmaVResult lemma_v_element(const ResidueInt& x, const ResidueInt& y, std::uint64_t l);

// C^-1 rho(g) C == (1 + p^(m-1) v(g)) rho(g) mod p^m for g in {sigma, tau}, with C == 1 mod p.
// Throws InputError if rho is not of the shape ((l x; 0 1), (1 y; 0 1)) or m < 2.
bool verify_adjustment(const TameLocalData& rho, const CocycleGen& v, const ResidueMatrix& C);

// (1 + p^k c u) rho on sigma and tau.
TameLocalData act(const CocycleGen& u, std::int64_t c, int k, const TameLocalData& rho);

// Does rho have the shape of the family (upper triangular patterns; "=" entries
// compared with `reference`)?
bool in_family(const PlanEntry& e, const TameLocalData& rho, const TameLocalData& reference);

// rho(tau_q) = (1 p x; 0 1) and rho(sigma_q) = (q p y; 0 1) mod p^n.
bool cq_membership(const TameLocalData& data, std::uint64_t q);

std::string to_string(PlanEntry::Status s);

}  // namespace modcong
