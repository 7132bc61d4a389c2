#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>

#include "modcong/arith.hpp"

namespace modcong {

enum class FrobShape { Scalar, RegularSemisimple, Unipotent };

// Types of mod p representations of G_l (l != p, l odd), up to twist.
namespace residual {
struct PrincipalSeries {
  bool phi_ramified = false;
  bool operator==(const PrincipalSeries&) const = default;
};
struct UnramifiedTwistLine {  // (1 psi; 0 1)
  bool operator==(const UnramifiedTwistLine&) const = default;
};
struct Steinberg {
  bool operator==(const Steinberg&) const = default;
};
struct Induced {
  bool M_ramified = false;
  bool operator==(const Induced&) const = default;
};
struct UnramifiedFrob {
  FrobShape shape = FrobShape::Scalar;
  bool operator==(const UnramifiedFrob&) const = default;
};
}  // namespace residual

using ResidualLocalType = std::variant<residual::PrincipalSeries, residual::UnramifiedTwistLine, residual::Steinberg,
                                       residual::Induced, residual::UnramifiedFrob>;

// Types of representations G_l -> GL2(Zbar_p) up to twist and GL2(Zbar_p) equivalence.
namespace integral {
struct PrincipalSeries {
  bool phi_ramified = true;
  int lattice_exponent = 0;  // <= 0
  bool operator==(const PrincipalSeries&) const = default;
};
struct Steinberg {
  int lattice_exponent = 0;  // >= 0
  bool operator==(const Steinberg&) const = default;
};
struct Induced {
  bool M_ramified = false;
  bool descends_mod_p = false;
  bool operator==(const Induced&) const = default;
};
}  // namespace integral

using IntegralLocalType = std::variant<integral::PrincipalSeries, integral::Steinberg, integral::Induced>;

// Throws InputError on a lattice exponent of the wrong sign.
void validate(const IntegralLocalType& t);

// Coarse classes used for reduction tables.
enum class ReductionClass { RamifiedPrincipalSeries, UnramifiedPrincipalSeries, Steinberg, Induced };
using ReductionSet = std::set<ReductionClass>;

ReductionClass reduction_class(const ResidualLocalType& t);

std::string to_string(FrobShape s);
std::string to_string(const ResidualLocalType& t);
std::string to_string(const IntegralLocalType& t);
std::string to_string(ReductionClass c);

// Images of a Frobenius lift sigma and a tame inertia generator tau over Z/p^n,
// subject to sigma tau sigma^-1 = tau^l.
class TameLocalData {
 public:
  // Throws InputError on l = 2, l = p, non-prime l, non-invertible matrices,
  // or when the tame relation fails mod p^n.
  TameLocalData(std::uint64_t l, ResidueMatrix sigma, ResidueMatrix tau);

  std::uint64_t l() const { return l_; }
  const PrimePowerModulus& modulus() const { return sigma_.modulus(); }
  const ResidueMatrix& sigma() const { return sigma_; }
  const ResidueMatrix& tau() const { return tau_; }

  TameLocalData reduce_mod_p() const;
  // Conjugate by g and twist by scalars (s on sigma, t on tau).
  TameLocalData conjugated(const ResidueMatrix& g) const;
  TameLocalData twisted(std::int64_t s, std::int64_t t) const;

 private:
  std::uint64_t l_;
  ResidueMatrix sigma_, tau_;
};

// Type of the mod p reduction of the data, after optimal twist.
ResidualLocalType classify_residual(const TameLocalData& data);

// Residual classes a representation of type t can reduce to.
ReductionSet allowed_reductions(const IntegralLocalType& t, std::uint64_t l, std::uint64_t p);

// Refinement for representations with unramified coefficients (W(F) for p >= 5):
// ramified Principal Series and Induced types keep a ramified semisimplification.
ReductionSet integral_reduction_constraint(const IntegralLocalType& t, bool coeffs_unramified, std::uint64_t l,
                                           std::uint64_t p);

bool admits(const ReductionSet& allowed, const ResidualLocalType& t);

// Random explicit tame data over `mod` realizing a representation of type t at l:
// characters, lattice and twist drawn at random, then conjugated by a random
// element of GL2. With unramified_coefficients the inertia values are restricted
// to roots of unity of order prime to p (so the data lifts to W(F_p)).
// nullopt when the type has no realization at this l (e.g. a ramified
// character that is 1 mod p needs l == 1 mod p).
std::optional<TameLocalData> realize(const IntegralLocalType& t, std::uint64_t l, const PrimePowerModulus& mod,
                                     std::mt19937_64& rng, bool unramified_coefficients = false);

// True iff a ramified character of G_l can become unramified mod p, i.e. l == 1 mod p.
bool ramification_loss_possible(std::uint64_t l, std::uint64_t p);

}  // namespace modcong
