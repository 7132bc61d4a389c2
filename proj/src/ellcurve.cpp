#include "modcong/ellcurve.hpp"

#include <algorithm>
#include <future>
#include <vector>

namespace modcong {

namespace {

int big_valuation(BigInt v, std::uint64_t l) {
  if (v == 0) return 1 << 20;
  int k = 0;
  while (v % l == 0) {
    v /= l;
    ++k;
  }
  return k;
}

std::int64_t mod_small(const BigInt& v, std::uint64_t l) {
  BigInt r = v % l;
  if (r < 0) r += l;
  return static_cast<std::int64_t>(r);
}

// Apply [u, r, s, t]; returns nullopt if the new coefficients are not integral.
std::optional<std::array<BigInt, 5>> transform(const std::array<BigInt, 5>& a, const BigInt& u, const BigInt& r,
                                               const BigInt& s, const BigInt& t) {
  const BigInt &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  std::array<BigInt, 5> num{
      a1 + 2 * s,
      a2 - s * a1 + 3 * r - s * s,
      a3 + r * a1 + 2 * t,
      a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
      a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
  };
  const int w[5] = {1, 2, 3, 4, 6};
  std::array<BigInt, 5> out;
  for (int i = 0; i < 5; ++i) {
    BigInt den = pow(u, w[i]);
    if (num[i] % den != 0) return std::nullopt;
    out[i] = num[i] / den;
  }
  return out;
}

CurveInvariants invariants_big(const std::array<BigInt, 5>& a) {
  CurveInvariants c;
  const BigInt &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  c.b2 = a1 * a1 + 4 * a2;
  c.b4 = 2 * a4 + a1 * a3;
  c.b6 = a3 * a3 + 4 * a6;
  c.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c.c4 = c.b2 * c.b2 - 24 * c.b4;
  c.c6 = -c.b2 * c.b2 * c.b2 + 36 * c.b2 * c.b4 - 216 * c.b6;
  c.disc = -c.b2 * c.b2 * c.b8 - 8 * c.b4 * c.b4 * c.b4 - 27 * c.b6 * c.b6 + 9 * c.b2 * c.b4 * c.b6;
  return c;
}

std::array<BigInt, 5> to_big(const WeierstrassCurve& e) {
  std::array<BigInt, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = e.a[i];
  return a;
}

// Minimal coefficients at l, as big integers.
std::array<BigInt, 5> minimal_big(const WeierstrassCurve& e, std::uint64_t l) {
  auto a = to_big(e);
  for (;;) {
    auto inv = invariants_big(a);
    if (big_valuation(inv.disc, l) < 12) return a;
    if (l >= 5) {
      if (big_valuation(inv.c4, l) < 4) return a;
      // scale the short model y^2 = x^3 - 27 c4 x - 54 c6 by u = l
      BigInt u4 = pow(BigInt(l), 4), u6 = pow(BigInt(l), 6);
      BigInt c4 = inv.c4 / u4, c6 = inv.c6 / u6;
      a = {0, 0, 0, -27 * c4, -54 * c6};
      continue;
    }
    bool found = false;
    const BigInt u = l;
    for (std::uint64_t s = 0; s < l && !found; ++s)
      for (std::uint64_t r = 0; r < l * l && !found; ++r)
        for (std::uint64_t t = 0; t < l * l * l && !found; ++t) {
          auto n = transform(a, u, r, s, t);
          if (n) {
            a = *n;
            found = true;
          }
        }
    if (!found) return a;
  }
}

}  // namespace

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "good";
    case ReductionKind::SplitMultiplicative: return "split";
    case ReductionKind::NonsplitMultiplicative: return "nonsplit";
    case ReductionKind::Additive: return "additive";
  }
  return "?";
}

CurveInvariants invariants(const WeierstrassCurve& e) { return invariants_big(to_big(e)); }

void validate_curve(const WeierstrassCurve& e) {
  if (invariants(e).disc == 0) throw InputError("singular Weierstrass equation (zero discriminant)");
}

WeierstrassCurve minimal_model_at(const WeierstrassCurve& e, std::uint64_t l) {
  if (!is_prime(l)) throw InputError("minimal_model_at: l must be prime");
  validate_curve(e);
  auto a = minimal_big(e, l);
  WeierstrassCurve out = e;
  for (int i = 0; i < 5; ++i) {
    if (a[i] > std::numeric_limits<std::int64_t>::max() || a[i] < std::numeric_limits<std::int64_t>::min())
      throw ResourceBoundExceeded("minimal model coefficients exceed 64 bits");
    out.a[i] = static_cast<std::int64_t>(a[i]);
  }
  return out;
}

ReductionKind reduction_type(const WeierstrassCurve& e, std::uint64_t l) {
  if (!is_prime(l)) throw InputError("reduction_type: l must be prime");
  validate_curve(e);
  auto a = minimal_big(e, l);
  auto inv = invariants_big(a);
  if (big_valuation(inv.disc, l) == 0) return ReductionKind::Good;
  if (big_valuation(inv.c4, l) > 0) return ReductionKind::Additive;
  if (l == 2) {
    std::int64_t A[5];
    for (int i = 0; i < 5; ++i) A[i] = mod_small(a[i], 2);
    for (std::int64_t x = 0; x < 2; ++x)
      for (std::int64_t y = 0; y < 2; ++y) {
        std::int64_t F = (y * y + A[0] * x * y + A[2] * y + x * x * x + A[1] * x * x + A[3] * x + A[4]) % 2;
        std::int64_t Fx = (A[0] * y + x * x + A[3]) % 2;
        std::int64_t Fy = (A[0] * x + A[2]) % 2;
        if (F == 0 && Fx == 0 && Fy == 0) {
          // tangent cone Y^2 + a1 X Y - a2' X^2 with a2' = a2 + 3x
          std::int64_t a2p = (A[1] + x) % 2;
          return a2p == 0 ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative;
        }
      }
    throw ArithmeticError("no singular point found at 2");
  }
  const auto L = static_cast<std::int64_t>(l);
  std::int64_t b2 = mod_small(inv.b2, l), b4 = mod_small(inv.b4, l), b6 = mod_small(inv.b6, l);
  for (std::int64_t x = 0; x < L; ++x) {
    // f = 4x^3 + b2 x^2 + 2 b4 x + b6 and its derivative
    std::int64_t f = ((4 * x % L * x % L * x) % L + b2 * x % L * x % L + 2 * b4 * x % L + b6) % L;
    std::int64_t fp = (12 * x % L * x % L + 2 * b2 * x % L + 2 * b4) % L;
    if (f == 0 && fp == 0) {
      return legendre(12 * x + b2, l) == 1 ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative;
    }
  }
  throw ArithmeticError("no singular point found");
}

std::int64_t ap_of_prime(const WeierstrassCurve& e, std::uint64_t l, std::uint64_t max_prime) {
  if (!is_prime(l)) throw InputError("ap_of_prime: " + std::to_string(l) + " is not prime");
  if (l > max_prime) throw ResourceBoundExceeded("prime " + std::to_string(l) + " above the point-counting bound");
  validate_curve(e);
  auto a = minimal_big(e, l);
  auto inv = invariants_big(a);
  if (big_valuation(inv.disc, l) > 0) throw BadPrimeError("bad reduction at " + std::to_string(l));
  const auto L = static_cast<std::int64_t>(l);
  if (l == 2) {
    std::int64_t A[5];
    for (int i = 0; i < 5; ++i) A[i] = mod_small(a[i], 2);
    std::int64_t count = 1;  // point at infinity
    for (std::int64_t x = 0; x < 2; ++x)
      for (std::int64_t y = 0; y < 2; ++y)
        if ((y * y + A[0] * x * y + A[2] * y + x * x * x + A[1] * x * x + A[3] * x + A[4]) % 2 == 0) ++count;
    return 3 - count;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  std::int64_t b2 = mod_small(inv.b2, l), b4 = mod_small(inv.b4, l), b6 = mod_small(inv.b6, l);
  std::vector<signed char> chi(l, -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y < L; ++y) chi[static_cast<std::size_t>(mulmod(y, y, l))] = 1;
  std::int64_t s = 0;
  for (std::int64_t x = 0; x < L; ++x) {
    std::int64_t x2 = static_cast<std::int64_t>(mulmod(x, x, l));
    std::int64_t x3 = static_cast<std::int64_t>(mulmod(x2, x, l));
    std::int64_t f = (static_cast<std::int64_t>(mulmod(4, x3, l)) + static_cast<std::int64_t>(mulmod(b2, x2, l)) +
                      static_cast<std::int64_t>(mulmod(2 * b4 % L, x, l)) + b6) % L;
    s += chi[static_cast<std::size_t>(f)];
  }
  return -s;
}

std::int64_t ap_any(const WeierstrassCurve& e, std::uint64_t l) {
  switch (reduction_type(e, l)) {
    case ReductionKind::Good: return ap_of_prime(e, l);
    case ReductionKind::SplitMultiplicative: return 1;
    case ReductionKind::NonsplitMultiplicative: return -1;
    case ReductionKind::Additive: return 0;
  }
  return 0;
}

ApTable ap_table(const WeierstrassCurve& e, std::uint64_t bound, unsigned jobs) {
  if (bound < 2) throw InputError("ap_table: bound must be at least 2");
  validate_curve(e);
  const auto primes = primes_up_to(bound);
  std::vector<ReductionKind> kinds(primes.size());
  std::vector<std::int64_t> traces(primes.size());
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < primes.size(); i += stride) {
      kinds[i] = reduction_type(e, primes[i]);
      traces[i] = ap_any(e, primes[i]);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, 64));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::future<void>> fs;
    for (unsigned j = 0; j < jobs; ++j) fs.push_back(std::async(std::launch::async, work, j, jobs));
    for (auto& f : fs) f.get();
  }
  ApTable t;
  t.bound = bound;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (kinds[i] != ReductionKind::Good) t.bad_primes[primes[i]] = kinds[i];
    t.ap[primes[i]] = traces[i];
  }
  return t;
}

std::optional<std::uint64_t> conductor_of(const WeierstrassCurve& e) {
  if (e.conductor) return e.conductor;
  BigInt d = invariants(e).disc;
  if (d < 0) d = -d;
  std::uint64_t N = 1;
  for (std::uint64_t l = 2; d > 1; ++l) {
    if (d % l != 0) continue;
    while (d % l == 0) d /= l;
    auto k = reduction_type(e, l);
    if (k == ReductionKind::Additive) return std::nullopt;
    if (k != ReductionKind::Good) N *= l;
    if (l > 1000000) return std::nullopt;
  }
  return N;
}

}  // namespace modcong
