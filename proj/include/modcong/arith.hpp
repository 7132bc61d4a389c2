#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modcong {

// Raised when an arithmetic precondition fails (non-unit inverse, bad residue, ...).
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A characteristic polynomial that does not split over the residue ring.
class NotSplitError : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

// Malformed user input (bad prime, bad JSON, ...). CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured search or size bound was hit. CLI exit code 3.
class ResourceBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- elementary helpers ---------------------------------------------------

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= 0xffffffffULL) return a * b % m;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::optional<std::uint64_t> invmod(std::uint64_t a, std::uint64_t m);

// p-adic valuation of a nonzero integer.
int valuation(std::int64_t v, std::uint64_t p);

// Legendre symbol (a|p) for an odd prime p; 0 when p | a.
int legendre(std::int64_t a, std::uint64_t p);

// Square root mod an odd prime (Tonelli-Shanks). nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

// ---- Z/p^n ---------------------------------------------------------------

// The ring Z/p^n for a prime p >= 5, n >= 1 and p^n < 2^62.
class PrimePowerModulus {
 public:
  PrimePowerModulus(std::uint64_t p, int n);

  std::uint64_t p() const { return p_; }
  int n() const { return n_; }
  std::uint64_t value() const { return pn_; }

  std::uint64_t reduce(std::int64_t v) const {
    return static_cast<std::uint64_t>(floor_mod(v, static_cast<std::int64_t>(pn_)));
  }
  // Valuation of a canonical residue; n for zero.
  int valuation(std::uint64_t canonical) const;
  std::uint64_t power(int k) const;  // p^k, k <= n
  PrimePowerModulus with_exponent(int k) const { return {p_, k}; }
  std::string to_string() const;  // "5^2"

  friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  std::uint64_t p_;
  int n_;
  std::uint64_t pn_;
};

class ResidueInt {
 public:
  ResidueInt(std::int64_t v, const PrimePowerModulus& m) : v_(m.reduce(v)), m_(m) {}
  static ResidueInt from_canonical(std::uint64_t v, const PrimePowerModulus& m) {
    ResidueInt r(0, m);
    r.v_ = v % m.value();
    return r;
  }

  std::uint64_t value() const { return v_; }
  // Representative in (-p^n/2, p^n/2].
  std::int64_t signed_value() const;
  const PrimePowerModulus& modulus() const { return m_; }

  bool is_zero() const { return v_ == 0; }
  bool is_unit() const { return v_ % m_.p() != 0; }
  int valuation() const { return m_.valuation(v_); }
  ResidueInt inverse() const;  // throws ArithmeticError on non-units
  ResidueInt pow(std::uint64_t e) const;
  // Image in Z/p^k for k <= n.
  ResidueInt reduce_to(int k) const;

  ResidueInt operator+(const ResidueInt& o) const;
  ResidueInt operator-(const ResidueInt& o) const;
  ResidueInt operator*(const ResidueInt& o) const;
  ResidueInt operator-() const;
  ResidueInt& operator+=(const ResidueInt& o) { return *this = *this + o; }
  ResidueInt& operator-=(const ResidueInt& o) { return *this = *this - o; }
  ResidueInt& operator*=(const ResidueInt& o) { return *this = *this * o; }
  friend bool operator==(const ResidueInt& a, const ResidueInt& b) {
    return a.m_ == b.m_ && a.v_ == b.v_;
  }

 private:
  void check_same(const ResidueInt& o) const;
  std::uint64_t v_;
  PrimePowerModulus m_;
};

// Dense row-major matrix over Z/p^n with canonical entries.
class ResidueMatrix {
 public:
  ResidueMatrix(std::size_t rows, std::size_t cols, const PrimePowerModulus& m)
      : rows_(rows), cols_(cols), m_(m), a_(rows * cols, 0) {}

  static ResidueMatrix identity(std::size_t n, const PrimePowerModulus& m);
  static ResidueMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                 const PrimePowerModulus& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimePowerModulus& modulus() const { return m_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  ResidueInt entry(std::size_t r, std::size_t c) const {
    return ResidueInt::from_canonical(at(r, c), m_);
  }
  void set(std::size_t r, std::size_t c, std::int64_t v) { at(r, c) = m_.reduce(v); }

  std::span<std::uint64_t> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {a_.data() + r * cols_, cols_};
  }
  void append_row(std::span<const std::uint64_t> r);
  bool is_zero() const;

  ResidueMatrix transpose() const;
  ResidueMatrix operator*(const ResidueMatrix& o) const;
  ResidueMatrix operator+(const ResidueMatrix& o) const;
  ResidueMatrix operator-(const ResidueMatrix& o) const;
  // Multiply every entry by a scalar.
  ResidueMatrix scaled(std::uint64_t s) const;
  std::vector<std::uint64_t> apply(std::span<const std::uint64_t> v) const;  // M v

  friend bool operator==(const ResidueMatrix& a, const ResidueMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.m_ == b.m_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_, cols_;
  PrimePowerModulus m_;
  std::vector<std::uint64_t> a_;
};

// ---- operations -----------------------------------------------------------

// Square root of u == 1 mod p, the one congruent to 1 mod p.
ResidueInt hensel_sqrt(const ResidueInt& u);

// Roots of x^2 + a1 x + a0 when distinct mod p and rational over F_p.
// Returned in ascending canonical order. nullopt if not split.
std::optional<std::pair<ResidueInt, ResidueInt>> quadratic_roots(const ResidueInt& a1,
                                                                  const ResidueInt& a0);

// Multiplicative order of a unit.
std::uint64_t mult_order(const ResidueInt& a);

// Largest useful exponent: floor(p e/(p-1)) + 1 when p divides the order, else 1.
std::int64_t modulus_exponent_bound(bool divides_p, std::int64_t e, std::uint64_t p);

}  // namespace modcong
