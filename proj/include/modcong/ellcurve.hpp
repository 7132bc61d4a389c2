#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "modcong/arith.hpp"

namespace modcong {

using BigInt = boost::multiprecision::cpp_int;

struct WeierstrassCurve {
  std::array<std::int64_t, 5> a{};  // a1 a2 a3 a4 a6
  std::string label;
  std::optional<std::uint64_t> conductor;
};

struct CurveInvariants {
  BigInt b2, b4, b6, b8, c4, c6, disc;
};

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string to_string(ReductionKind k);

// Raised when a_l is requested at a prime of bad reduction.
class BadPrimeError : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

CurveInvariants invariants(const WeierstrassCurve& e);
// Throws InputError for singular curves.
void validate_curve(const WeierstrassCurve& e);

// A model minimal at l (the input if it already is).
WeierstrassCurve minimal_model_at(const WeierstrassCurve& e, std::uint64_t l);
ReductionKind reduction_type(const WeierstrassCurve& e, std::uint64_t l);

// l + 1 - #E(F_l) at a good prime. Primes above `max_prime` raise ResourceBoundExceeded.
std::int64_t ap_of_prime(const WeierstrassCurve& e, std::uint64_t l, std::uint64_t max_prime = 10'000'000);

// Trace at any prime: the point count at good primes, +1 / -1 / 0 at split,
// nonsplit and additive primes.
std::int64_t ap_any(const WeierstrassCurve& e, std::uint64_t l);

struct ApTable {
  enum class Source { Counted, Ingested };
  std::uint64_t bound = 0;
  Source source = Source::Counted;
  std::map<std::uint64_t, std::int64_t> ap;           // every prime <= bound
  std::map<std::uint64_t, ReductionKind> bad_primes;  // subset of the keys of ap
};

// `jobs` worker threads; the result does not depend on it.
ApTable ap_table(const WeierstrassCurve& e, std::uint64_t bound, unsigned jobs = 1);

// Conductor when known: the supplied one, or the product of bad primes for a
// semistable curve. nullopt if there is additive reduction and none was given.
std::optional<std::uint64_t> conductor_of(const WeierstrassCurve& e);

}  // namespace modcong
