#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcong/arith.hpp"
#include "modcong/ellcurve.hpp"

namespace modcong {

struct AuxPrimeCertificate {
  std::uint64_t q = 0;
  int sign = 0;  // a_q == sign (q + 1) mod p^n
  std::uint64_t p = 0;
  int n = 0;
  std::int64_t a_q = 0;
  // checks
  std::uint64_t q_mod_p = 0;    // neither 1 nor p - 1
  bool congruence = false;
  bool coprime_to_Np = false;
};

// Certificate iff q != +-1 mod p and a_q == eps (q + 1) mod p^n (trivial character).
// Throws InputError if q is not prime or divides N p.
std::optional<AuxPrimeCertificate> is_auxiliary(std::uint64_t q, std::int64_t a_q, std::uint64_t p, int n,
                                                std::uint64_t N);

// All certificates with q <= bound, ascending. Primes dividing N p are skipped;
// a missing a_q raises InputError.
std::vector<AuxPrimeCertificate> search_auxiliary(const ApTable& table, std::uint64_t p, int n, std::uint64_t bound,
                                                  std::uint64_t N);
std::vector<AuxPrimeCertificate> search_auxiliary(const WeierstrassCurve& e, std::uint64_t p, int n,
                                                  std::uint64_t bound, std::uint64_t N);

// Multiplicative order of the ratio of the roots of x^2 - a_q x + q, mod p and mod p^n.
// Throws NotSplitError unless the roots are distinct mod p and rational.
std::pair<std::uint64_t, std::uint64_t> frob_order_pair(std::uint64_t q, std::int64_t a_q, std::uint64_t p, int n);

enum class ImageVerdict { ContainsSL2, Inconclusive };
std::string to_string(ImageVerdict v);

struct BigImageReport {
  ImageVerdict verdict = ImageVerdict::Inconclusive;
  std::optional<std::uint64_t> irreducible_witness;  // char poly irreducible mod p, a_l != 0
  std::optional<std::uint64_t> split_witness;        // distinct rational roots, a_l != 0
  std::optional<std::uint64_t> trace_witness;        // a_l^2 / l avoids the exceptional values
  std::uint64_t deepest_prime = 0;
};

// Witness search for SL2(F_p) inside the mod-p image, p >= 5. Rules out the Borel,
// both Cartan normalizers and the A4 / S4 / A5 projective images.
// Throws InputError on a table with no usable prime.
BigImageReport big_image_verdict(const ApTable& table, std::uint64_t N, std::uint64_t p);

}  // namespace modcong
