#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "modcong/arith.hpp"

namespace modcong {

// F_p or F_{p^2} = F_p[s]/(s^2 - r) with r a non-residue; elements a + b s.
class FiniteField {
 public:
  struct Elt {
    std::uint64_t a = 0, b = 0;
    friend bool operator==(const Elt&, const Elt&) = default;
  };

  FiniteField(std::uint64_t p, int degree);

  std::uint64_t p() const { return p_; }
  int degree() const { return k_; }
  std::uint64_t size() const { return k_ == 1 ? p_ : p_ * p_; }

  Elt from_int(std::int64_t v) const { return {static_cast<std::uint64_t>(floor_mod(v, static_cast<std::int64_t>(p_))), 0}; }
  // Element number i in [0, size()).
  Elt element(std::uint64_t i) const { return {i % p_, k_ == 1 ? 0 : i / p_}; }
  Elt add(Elt x, Elt y) const { return {(x.a + y.a) % p_, (x.b + y.b) % p_}; }
  Elt sub(Elt x, Elt y) const { return {(x.a + p_ - y.a) % p_, (x.b + p_ - y.b) % p_}; }
  Elt neg(Elt x) const { return sub({0, 0}, x); }
  Elt mul(Elt x, Elt y) const;
  Elt inv(Elt x) const;  // throws ArithmeticError on zero
  bool is_zero(Elt x) const { return x.a == 0 && x.b == 0; }

  using Mat2 = std::array<Elt, 4>;  // row-major
  Mat2 mul(const Mat2& x, const Mat2& y) const;
  Elt det(const Mat2& x) const { return sub(mul(x[0], x[3]), mul(x[1], x[2])); }
  Mat2 inverse(const Mat2& x) const;

  // Dimension of the kernel of a rows x cols matrix (row-major).
  std::size_t nullity(std::vector<Elt> m, std::size_t rows, std::size_t cols) const;

 private:
  std::uint64_t p_;
  int k_;
  std::uint64_t r_ = 0;
};

}  // namespace modcong
