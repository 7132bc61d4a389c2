#include "modcong/ffield.hpp"

namespace modcong {

FiniteField::FiniteField(std::uint64_t p, int degree) : p_(p), k_(degree) {
  if (!is_prime(p) || p == 2) throw InputError("finite field: p must be an odd prime");
  if (degree != 1 && degree != 2) throw InputError("finite field: degree 1 or 2 only");
  if (k_ == 2)
    for (r_ = 2; legendre(static_cast<std::int64_t>(r_), p_) != -1; ++r_) {
    }
}

FiniteField::Elt FiniteField::mul(Elt x, Elt y) const {
  std::uint64_t a = (mulmod(x.a, y.a, p_) + mulmod(mulmod(x.b, y.b, p_), r_, p_)) % p_;
  std::uint64_t b = (mulmod(x.a, y.b, p_) + mulmod(x.b, y.a, p_)) % p_;
  return {a, b};
}

FiniteField::Elt FiniteField::inv(Elt x) const {
  if (is_zero(x)) throw ArithmeticError("inverse of zero");
  // (a + b s)^-1 = (a - b s) / (a^2 - r b^2)
  std::uint64_t n = (mulmod(x.a, x.a, p_) + p_ - mulmod(mulmod(x.b, x.b, p_), r_, p_)) % p_;
  std::uint64_t ni = *invmod(n, p_);
  return {mulmod(x.a, ni, p_), mulmod((p_ - x.b) % p_, ni, p_)};
}

FiniteField::Mat2 FiniteField::mul(const Mat2& x, const Mat2& y) const {
  return {add(mul(x[0], y[0]), mul(x[1], y[2])), add(mul(x[0], y[1]), mul(x[1], y[3])),
          add(mul(x[2], y[0]), mul(x[3], y[2])), add(mul(x[2], y[1]), mul(x[3], y[3]))};
}

FiniteField::Mat2 FiniteField::inverse(const Mat2& x) const {
  Elt d = inv(det(x));
  return {mul(x[3], d), mul(neg(x[1]), d), mul(neg(x[2]), d), mul(x[0], d)};
}

std::size_t FiniteField::nullity(std::vector<Elt> m, std::size_t rows, std::size_t cols) const {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && is_zero(m[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
    Elt iv = inv(m[rank * cols + c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || is_zero(m[r * cols + c])) continue;
      Elt f = mul(m[r * cols + c], iv);
      for (std::size_t j = 0; j < cols; ++j) m[r * cols + j] = sub(m[r * cols + j], mul(f, m[rank * cols + j]));
    }
    ++rank;
  }
  return cols - rank;
}

}  // namespace modcong
