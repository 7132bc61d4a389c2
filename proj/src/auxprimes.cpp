#include "modcong/auxprimes.hpp"

namespace modcong {

std::optional<AuxPrimeCertificate> is_auxiliary(std::uint64_t q, std::int64_t a_q, std::uint64_t p, int n,
                                                std::uint64_t N) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (!is_prime(q)) throw InputError("q = " + std::to_string(q) + " is not prime");
  if (q == p || (N != 0 && N % q == 0)) throw InputError("q = " + std::to_string(q) + " divides N p");
  PrimePowerModulus mod(p, n);
  AuxPrimeCertificate c;
  c.q = q;
  c.p = p;
  c.n = n;
  c.a_q = a_q;
  c.q_mod_p = q % p;
  c.coprime_to_Np = true;
  if (c.q_mod_p == 1 || c.q_mod_p == p - 1) return std::nullopt;
  const auto a = mod.reduce(a_q);
  const auto s = mod.reduce(static_cast<std::int64_t>(q) + 1);
  if (a == s)
    c.sign = 1;
  else if (a == (mod.value() - s) % mod.value())
    c.sign = -1;
  else
    return std::nullopt;
  c.congruence = true;
  return c;
}

std::vector<AuxPrimeCertificate> search_auxiliary(const ApTable& table, std::uint64_t p, int n, std::uint64_t bound,
                                                  std::uint64_t N) {
  std::vector<AuxPrimeCertificate> out;
  if (bound < 2) return out;
  for (auto q : primes_up_to(bound)) {
    if (q == p || N % q == 0) continue;
    auto it = table.ap.find(q);
    if (it == table.ap.end()) throw InputError("insufficient data: " + std::to_string(q));
    if (auto c = is_auxiliary(q, it->second, p, n, N)) out.push_back(*c);
  }
  return out;
}

std::vector<AuxPrimeCertificate> search_auxiliary(const WeierstrassCurve& e, std::uint64_t p, int n,
                                                  std::uint64_t bound, std::uint64_t N) {
  if (bound < 2) return {};
  return search_auxiliary(ap_table(e, bound), p, n, bound, N);
}

std::pair<std::uint64_t, std::uint64_t> frob_order_pair(std::uint64_t q, std::int64_t a_q, std::uint64_t p, int n) {
  PrimePowerModulus mod(p, n);
  auto roots = quadratic_roots(ResidueInt(-a_q, mod), ResidueInt(static_cast<std::int64_t>(q), mod));
  if (!roots) throw NotSplitError("x^2 - a_q x + q is not split with distinct roots mod p");
  auto [r1, r2] = *roots;
  if (!r1.is_unit() || !r2.is_unit()) throw InputError("q must be prime to p");
  auto ratio = r1 * r2.inverse();
  return {mult_order(ratio.reduce_to(1)), mult_order(ratio)};
}

std::string to_string(ImageVerdict v) { return v == ImageVerdict::ContainsSL2 ? "contains_SL2" : "inconclusive"; }

BigImageReport big_image_verdict(const ApTable& table, std::uint64_t N, std::uint64_t p) {
  if (!is_prime(p) || p < 5) throw InputError("p must be a prime >= 5");
  BigImageReport r;
  bool any = false;
  const auto P = static_cast<std::int64_t>(p);
  for (const auto& [l, a] : table.ap) {
    if (l == p || (N != 0 && N % l == 0) || table.bad_primes.count(l)) continue;
    any = true;
    r.deepest_prime = l;
    const std::uint64_t am = static_cast<std::uint64_t>(floor_mod(a, P));
    if (am == 0) continue;
    const std::uint64_t lm = l % p;
    const std::uint64_t disc = static_cast<std::uint64_t>(floor_mod(a * a - 4 * static_cast<std::int64_t>(lm), P));
    if (disc != 0) {
      if (legendre(static_cast<std::int64_t>(disc), p) == -1) {
        if (!r.irreducible_witness) r.irreducible_witness = l;
      } else if (!r.split_witness) {
        r.split_witness = l;
      }
    }
    // u = tr^2 / det; exceptional projective orders 1, 2, 3, 4, 5 give u in {4, 0, 1, 2, roots of u^2 - 3u + 1}
    const std::uint64_t u = mulmod(mulmod(am, am, p), *invmod(lm, p), p);
    const bool order5 = (mulmod(u, u, p) + 3 * p + 1 - 3 * u) % p == 0;
    if (u != 0 && u != 1 && u != 2 && u != 4 && !order5 && !r.trace_witness) r.trace_witness = l;
    if (r.irreducible_witness && r.split_witness && r.trace_witness) {
      r.verdict = ImageVerdict::ContainsSL2;
      return r;
    }
  }
  if (!any) throw InputError("insufficient data: no good prime in the table");
  return r;
}

}  // namespace modcong
