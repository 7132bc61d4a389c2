#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modcong/arith.hpp"
#include "modcong/linalg.hpp"

namespace modcong {

inline constexpr std::uint64_t kMaxModsymLevel = 20000;

// Index of Gamma0(N) in SL2(Z).
std::uint64_t gamma0_index(std::uint64_t N);
std::uint64_t cusp_count_x0(std::uint64_t N);
// Genus of X0(N) from the Riemann-Hurwitz formula.
std::uint64_t genus_x0(std::uint64_t N);
// ceil(k * index / 12)
std::uint64_t sturm_bound(std::uint64_t N, int k = 2);

// P^1(Z/N): pairs (c:d) with gcd(c, d, N) = 1 modulo units.
class P1List {
 public:
  explicit P1List(std::uint64_t N);

  std::uint64_t level() const { return N_; }
  std::size_t size() const { return reps_.size(); }
  const std::pair<std::int64_t, std::int64_t>& rep(std::size_t i) const { return reps_[i]; }
  // Throws ArithmeticError when gcd(c, d, N) != 1.
  std::size_t index(std::int64_t c, std::int64_t d) const;
  // -1 instead of throwing.
  std::int64_t try_index(std::int64_t c, std::int64_t d) const;

 private:
  std::pair<std::uint64_t, std::uint64_t> normalize(std::uint64_t c, std::uint64_t d) const;

  std::uint64_t N_;
  std::vector<std::pair<std::int64_t, std::int64_t>> reps_;
  std::vector<std::int32_t> table_;  // N*N lookup for small N
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> units_fixing_;  // keyed by gcd(c, N)
};

// A point of P^1(Q); den == 0 means infinity.
struct Cusp {
  std::int64_t num;
  std::int64_t den;
};

struct HeckeLabel {
  enum class Kind { T, U };
  Kind kind;
  std::uint64_t prime;
  static HeckeLabel T(std::uint64_t l) { return {Kind::T, l}; }
  static HeckeLabel U(std::uint64_t q) { return {Kind::U, q}; }
  std::string name() const { return (kind == Kind::T ? "T_" : "U_") + std::to_string(prime); }
};

// Matrices ad - bc = l with a > b >= 0, d > c >= 0.
std::vector<std::array<std::int64_t, 4>> heilbronn_merel(std::uint64_t l);

// Square matrix over a ring, acting on coordinate columns: (M x)_i = sum_j M[i][j] x_j.
template <class Ring>
struct RingMatrix {
  std::size_t n = 0;
  std::vector<RingVec<Ring>> rows;
};

// Weight-2 modular symbols for Gamma0(N) (no sign quotient), presented via Manin
// symbols over Z/p^n or Q.
template <class Ring>
class ModularSymbolSpace {
 public:
  using Value = typename Ring::value_type;
  using Vec = RingVec<Ring>;
  using Sparse = std::vector<std::pair<std::uint32_t, Value>>;

  ModularSymbolSpace(std::uint64_t level, Ring ring);

  std::uint64_t level() const { return N_; }
  const Ring& ring() const { return R_; }
  const P1List& p1() const { return p1_; }
  std::size_t ambient_dim() const { return gens_.size(); }
  std::size_t cuspidal_dim() const { return cusp_basis_.rank(); }
  std::size_t cusp_class_count() const { return cusps_.size(); }
  const FreeBasis<Ring>& cuspidal_basis() const { return cusp_basis_; }

  // P^1 index of the Manin symbol used as the j-th free generator.
  std::size_t generator_symbol(std::size_t j) const { return gens_[j]; }
  const Sparse& symbol_expr(std::size_t p1_index) const { return expr_[p1_index]; }

  Vec manin_symbol(std::int64_t c, std::int64_t d) const;
  Vec modular_symbol(const Cusp& a, const Cusp& b) const;  // {a, b}
  Vec boundary(const Vec& v) const;                         // coefficients on cusp classes

  // Image of ambient vectors under T_l (l not dividing N) or U_q (q | N).
  std::vector<Vec> apply(const HeckeLabel& op, const std::vector<Vec>& vs) const;
  // Same operators via explicit coset representatives on modular symbols.
  std::vector<Vec> apply_by_cosets(const HeckeLabel& op, const std::vector<Vec>& vs) const;
  // Same operators via Heilbronn matrices (symbols not in P^1(Z/N) dropped).
  std::vector<Vec> apply_heilbronn(const HeckeLabel& op, const std::vector<Vec>& vs) const;
  // Matrix of the operator on the cuspidal subspace in cuspidal_basis() coordinates.
  RingMatrix<Ring> hecke_operator(const HeckeLabel& op) const;

  // Coordinates of a cuspidal vector; throws if the vector is not cuspidal.
  Vec cuspidal_coordinates(const Vec& v) const;

  // Integer lift [[a,b],[c,d]] in SL2(Z) of free generator j.
  std::array<std::int64_t, 4> generator_lift(std::size_t j) const { return lifts_[j]; }

 private:
  void build_relations();
  void build_boundary();
  std::size_t cusp_class(std::int64_t u, std::int64_t v);
  using Counts = std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>;
  Counts heilbronn_counts(std::uint64_t l) const;
  Counts coset_counts(const HeckeLabel& op) const;
  std::vector<Vec> apply_counts(const Counts& counts, const std::vector<Vec>& vs) const;
  void add_modular_symbol(std::vector<std::int64_t>& acc, const Cusp& a, const Cusp& b, std::int64_t coef) const;
  void add_zero_to(std::vector<std::int64_t>& acc, const Cusp& b, std::int64_t coef) const;
  Vec collapse(const std::vector<Value>& acc) const;
  Vec collapse_int(const std::vector<std::int64_t>& acc) const;
  void check_label(const HeckeLabel& op) const;

  std::uint64_t N_;
  Ring R_;
  P1List p1_;
  std::vector<Sparse> expr_;                 // per P^1 index
  std::vector<std::size_t> gens_;            // free generators as P^1 indices
  std::vector<std::array<std::int64_t, 4>> lifts_;
  std::vector<std::pair<std::int64_t, std::int64_t>> cusps_;  // representatives u/v, v >= 0
  std::vector<std::vector<std::pair<std::size_t, int>>> gen_boundary_;
  FreeBasis<Ring> cusp_basis_;
};

// Images of the free generators of `from` (level M) under the degeneracy map
// beta_t into the ambient space of `to` (level N), t | N/M.
template <class Ring>
std::vector<RingVec<Ring>> degeneracy_images(const ModularSymbolSpace<Ring>& from, const ModularSymbolSpace<Ring>& to,
                                             std::uint64_t t);

// Images of the free generators of `from` (level N) under {a, b} -> {t a, t b}
// into the ambient space of `to` (level M), M t | N.
template <class Ring>
std::vector<RingVec<Ring>> lowering_images(const ModularSymbolSpace<Ring>& from, const ModularSymbolSpace<Ring>& to,
                                           std::uint64_t t);

// Apply a linear map given by generator images to a vector of `from`.
template <class Ring>
RingVec<Ring> apply_generator_images(const Ring& R, const std::vector<RingVec<Ring>>& images, const RingVec<Ring>& v,
                                     std::size_t target_dim);

ResidueMatrix to_residue_matrix(const RingMatrix<ResidueRing>& m, const PrimePowerModulus& mod);

extern template class ModularSymbolSpace<ResidueRing>;
extern template class ModularSymbolSpace<RationalField>;

}  // namespace modcong
