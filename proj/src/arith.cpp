#include "modcong/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace modcong {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mul = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = 1, b = a % n, e = d;
    while (e) {
      if (e & 1) x = mul(x, b);
      b = mul(b, b);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  sieve[0] = sieve[1] = false;
  for (std::uint64_t i = 2; i * i <= bound; ++i) {
    if (!sieve[i]) continue;
    for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (sieve[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t> invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1;
  __int128 r = m, nr = a % m;
  while (nr != 0) {
    __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) {
    if (m == 1) return 0;
    return std::nullopt;
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

int valuation(std::int64_t v, std::uint64_t p) {
  if (v == 0) throw ArithmeticError("valuation of zero");
  int k = 0;
  auto u = static_cast<std::uint64_t>(v < 0 ? -v : v);
  while (u % p == 0) {
    u /= p;
    ++k;
  }
  return k;
}

int legendre(std::int64_t a, std::uint64_t p) {
  std::uint64_t r = static_cast<std::uint64_t>(floor_mod(a, static_cast<std::int64_t>(p)));
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod(z, q, p), x = powmod(a, (q + 1) / 2, p), t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return std::min(x, p - x);
}

// ---- PrimePowerModulus ------------------------------------------------------

PrimePowerModulus::PrimePowerModulus(std::uint64_t p, int n) : p_(p), n_(n), pn_(1) {
  if (p < 5 || !is_prime(p)) throw InputError("modulus prime must be a prime >= 5, got " + std::to_string(p));
  if (n < 1) throw InputError("modulus exponent must be >= 1");
  for (int i = 0; i < n; ++i) {
    if (pn_ > (std::uint64_t{1} << 62) / p) throw InputError("p^n too large for 62-bit residues");
    pn_ *= p;
  }
}

int PrimePowerModulus::valuation(std::uint64_t canonical) const {
  if (canonical == 0) return n_;
  int k = 0;
  while (canonical % p_ == 0) {
    canonical /= p_;
    ++k;
  }
  return k;
}

std::uint64_t PrimePowerModulus::power(int k) const {
  if (k < 0 || k > n_) throw ArithmeticError("exponent out of range");
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

std::string PrimePowerModulus::to_string() const {
  return std::to_string(p_) + "^" + std::to_string(n_);
}

// ---- ResidueInt -------------------------------------------------------------

void ResidueInt::check_same(const ResidueInt& o) const {
  if (!(m_ == o.m_)) throw ArithmeticError("mixed moduli " + m_.to_string() + " and " + o.m_.to_string());
}

std::int64_t ResidueInt::signed_value() const {
  auto v = static_cast<std::int64_t>(v_);
  auto m = static_cast<std::int64_t>(m_.value());
  return v > m / 2 ? v - m : v;
}

ResidueInt ResidueInt::inverse() const {
  if (!is_unit()) throw ArithmeticError("inverse of non-unit " + std::to_string(v_) + " mod " + m_.to_string());
  return from_canonical(*invmod(v_, m_.value()), m_);
}

ResidueInt ResidueInt::pow(std::uint64_t e) const { return from_canonical(powmod(v_, e, m_.value()), m_); }

ResidueInt ResidueInt::reduce_to(int k) const {
  if (k > m_.n()) throw ArithmeticError("cannot lift a residue to a finer modulus");
  PrimePowerModulus m2 = m_.with_exponent(k);
  return from_canonical(v_ % m2.value(), m2);
}

ResidueInt ResidueInt::operator+(const ResidueInt& o) const {
  check_same(o);
  std::uint64_t s = v_ + o.v_;
  return from_canonical(s >= m_.value() ? s - m_.value() : s, m_);
}

ResidueInt ResidueInt::operator-(const ResidueInt& o) const {
  check_same(o);
  return from_canonical(v_ >= o.v_ ? v_ - o.v_ : v_ + m_.value() - o.v_, m_);
}

ResidueInt ResidueInt::operator*(const ResidueInt& o) const {
  check_same(o);
  return from_canonical(mulmod(v_, o.v_, m_.value()), m_);
}

ResidueInt ResidueInt::operator-() const { return from_canonical(v_ == 0 ? 0 : m_.value() - v_, m_); }

// ---- ResidueMatrix ----------------------------------------------------------

ResidueMatrix ResidueMatrix::identity(std::size_t n, const PrimePowerModulus& m) {
  ResidueMatrix r(n, n, m);
  for (std::size_t i = 0; i < n; ++i) r.at(i, i) = 1;
  return r;
}

ResidueMatrix ResidueMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                       const PrimePowerModulus& m) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  ResidueMatrix r(rows.size(), c, m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) r.set(i, j, rows[i][j]);
  }
  return r;
}

void ResidueMatrix::append_row(std::span<const std::uint64_t> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw ArithmeticError("row length mismatch");
  for (auto v : r) a_.push_back(v % m_.value());
  ++rows_;
}

bool ResidueMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint64_t v) { return v == 0; });
}

ResidueMatrix ResidueMatrix::transpose() const {
  ResidueMatrix t(cols_, rows_, m_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
  if (!(m_ == o.m_) || cols_ != o.rows_) throw ArithmeticError("matrix product shape/modulus mismatch");
  ResidueMatrix r(rows_, o.cols_, m_);
  const std::uint64_t mod = m_.value();
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = at(i, k);
      if (a == 0) continue;
      auto orow = o.row(k);
      auto rrow = r.row(i);
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (orow[j] == 0) continue;
        std::uint64_t s = rrow[j] + mulmod(a, orow[j], mod);
        rrow[j] = s >= mod ? s - mod : s;
      }
    }
  }
  return r;
}

ResidueMatrix ResidueMatrix::operator+(const ResidueMatrix& o) const {
  if (!(m_ == o.m_) || rows_ != o.rows_ || cols_ != o.cols_) throw ArithmeticError("matrix sum shape mismatch");
  ResidueMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    std::uint64_t s = a_[i] + o.a_[i];
    r.a_[i] = s >= m_.value() ? s - m_.value() : s;
  }
  return r;
}

ResidueMatrix ResidueMatrix::operator-(const ResidueMatrix& o) const { return *this + o.scaled(m_.value() - 1); }

ResidueMatrix ResidueMatrix::scaled(std::uint64_t s) const {
  ResidueMatrix r(*this);
  s %= m_.value();
  for (auto& v : r.a_) v = mulmod(v, s, m_.value());
  return r;
}

std::vector<std::uint64_t> ResidueMatrix::apply(std::span<const std::uint64_t> v) const {
  if (v.size() != cols_) throw ArithmeticError("vector length mismatch");
  std::vector<std::uint64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      s += mulmod(at(i, j), v[j], m_.value());
      if (s >= m_.value()) s -= m_.value();
    }
    out[i] = s;
  }
  return out;
}

// ---- operations -------------------------------------------------------------

ResidueInt hensel_sqrt(const ResidueInt& u) {
  const auto& m = u.modulus();
  if (u.value() % m.p() != 1) throw ArithmeticError("hensel_sqrt needs u == 1 mod p");
  // Newton: r <- r - (r^2 - u) / (2 r); r stays == 1 mod p so 2r is a unit.
  ResidueInt r(1, m);
  ResidueInt two(2, m);
  for (int prec = 1; prec < m.n(); prec *= 2) {
    r = r - (r * r - u) * (two * r).inverse();
  }
  r = r - (r * r - u) * (two * r).inverse();
  if (!(r * r == u)) throw ArithmeticError("hensel_sqrt failed to converge");
  return r;
}

std::optional<std::pair<ResidueInt, ResidueInt>> quadratic_roots(const ResidueInt& a1, const ResidueInt& a0) {
  const auto& m = a1.modulus();
  if (!(m == a0.modulus())) throw ArithmeticError("mixed moduli");
  const std::uint64_t p = m.p();
  auto disc = static_cast<std::int64_t>((mulmod(a1.value() % p, a1.value() % p, p) + 4 * (p - a0.value() % p)) % p);
  if (disc == 0) return std::nullopt;  // repeated root mod p
  auto s = sqrt_mod_prime(static_cast<std::uint64_t>(disc), p);
  if (!s) return std::nullopt;
  const std::uint64_t inv2 = (p + 1) / 2;
  auto f = [&](const ResidueInt& x) { return x * x + a1 * x + a0; };
  auto lift = [&](std::uint64_t root_mod_p) {
    ResidueInt r(static_cast<std::int64_t>(root_mod_p), m);
    ResidueInt two(2, m);
    for (int i = 0; i <= m.n(); ++i) r = r - f(r) * (two * r + a1).inverse();
    return r;
  };
  std::uint64_t minus_a1 = (p - a1.value() % p) % p;
  std::uint64_t r1 = mulmod((minus_a1 + *s) % p, inv2, p);
  std::uint64_t r2 = mulmod((minus_a1 + p - *s) % p, inv2, p);
  ResidueInt x1 = lift(r1), x2 = lift(r2);
  if (!f(x1).is_zero() || !f(x2).is_zero()) throw ArithmeticError("Hensel lift failed");
  if (x2.value() < x1.value()) std::swap(x1, x2);
  return std::make_pair(x1, x2);
}

std::uint64_t mult_order(const ResidueInt& a) {
  if (!a.is_unit()) throw ArithmeticError("mult_order of a non-unit");
  const auto& m = a.modulus();
  // The unit group has order p^(n-1) (p-1).
  std::uint64_t group = m.power(m.n() - 1) * (m.p() - 1);
  std::uint64_t ord = group;
  for (std::uint64_t q : prime_factors(group)) {
    while (ord % q == 0 && powmod(a.value(), ord / q, m.value()) == 1) ord /= q;
  }
  return ord;
}

std::int64_t modulus_exponent_bound(bool divides_p, std::int64_t e, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("modulus_exponent_bound: p must be prime");
  if (e < 1) throw InputError("modulus_exponent_bound: ramification index must be >= 1");
  if (!divides_p) return 1;
  return static_cast<std::int64_t>(p) * e / static_cast<std::int64_t>(p - 1) + 1;
}

}  // namespace modcong
