#pragma once

// Linear algebra over Z/p^n (Howell forms) and a small ring abstraction so the
// modular symbol code can run over Z/p^n or exactly over Q.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "modcong/arith.hpp"

namespace modcong {

// ---- Howell normal form -----------------------------------------------------

// Canonical Howell form of the row span. Zero rows are dropped; pivots are
// powers of p and entries above a pivot p^k lie in [0, p^k).
ResidueMatrix howell_form(const ResidueMatrix& m);
ResidueMatrix howell_span(const std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols,
                          const PrimePowerModulus& mod);

// Howell form of {v : m v = 0}.
ResidueMatrix howell_kernel(const ResidueMatrix& m);

// dim over F_p of p^(n-1) * span, i.e. the rank of the largest free quotient.
std::size_t free_rank(const ResidueMatrix& span);
// log_p of the order of the span; the argument must be in Howell form.
std::size_t module_length(const ResidueMatrix& howell);
// Membership test against a Howell form.
bool howell_contains(const ResidueMatrix& howell, std::span<const std::uint64_t> v);

// ---- rings ------------------------------------------------------------------

struct ResidueRing {
  using value_type = std::uint64_t;
  PrimePowerModulus modulus;

  explicit ResidueRing(const PrimePowerModulus& m) : modulus(m) {}
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return modulus.reduce(v); }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= modulus.value() ? s - modulus.value() : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + modulus.value() - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : modulus.value() - a; }
  value_type mul(value_type a, value_type b) const { return mulmod(a, b, modulus.value()); }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a % modulus.p() != 0; }
  bool is_pm_one(value_type a) const { return a == 1 || a == modulus.value() - 1; }
  value_type inv(value_type a) const {
    auto r = invmod(a, modulus.value());
    if (!r || !is_unit(a)) throw ArithmeticError("inverse of non-unit");
    return *r;
  }
};

struct RationalField {
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return v; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const { return a != 0; }
  bool is_pm_one(const value_type& a) const { return a == 1 || a == -1; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw ArithmeticError("division by zero");
    return 1 / a;
  }
};

template <class Ring>
using RingVec = std::vector<typename Ring::value_type>;

// a += c * b
template <class Ring>
void axpy(const Ring& R, RingVec<Ring>& a, const typename Ring::value_type& c, const RingVec<Ring>& b) {
  if (R.is_zero(c)) return;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!R.is_zero(b[j])) a[j] = R.add(a[j], R.mul(c, b[j]));
  }
}

template <class Ring>
bool is_zero_vec(const Ring& R, const RingVec<Ring>& v) {
  for (const auto& x : v)
    if (!R.is_zero(x)) return false;
  return true;
}

// A basis of a free submodule with unit pivots, fully reduced at the pivot
// columns, so coordinates can be read off directly.
template <class Ring>
class FreeBasis {
 public:
  FreeBasis(Ring ring, std::size_t dim) : R_(std::move(ring)), dim_(dim) {}

  // Throws ArithmeticError when the span is not free with a unit-pivot basis.
  static FreeBasis from_vectors(const Ring& R, std::size_t dim, const std::vector<RingVec<Ring>>& vecs) {
    FreeBasis b(R, dim);
    std::vector<RingVec<Ring>> pending;
    for (const auto& v : vecs) {
      if (!b.insert(v)) pending.push_back(v);
    }
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      std::vector<RingVec<Ring>> still;
      for (auto& v : pending) {
        auto r = b.reduce(v);
        if (is_zero_vec(R, r)) {
          progress = true;
          continue;
        }
        if (b.insert(r)) {
          progress = true;
        } else {
          still.push_back(std::move(r));
        }
      }
      pending = std::move(still);
    }
    if (!pending.empty()) throw ArithmeticError("span is not free over the coefficient ring");
    return b;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<RingVec<Ring>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }
  const Ring& ring() const { return R_; }

  RingVec<Ring> reduce(RingVec<Ring> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto c = v[piv_[i]];
      if (!R_.is_zero(c)) axpy(R_, v, R_.neg(c), rows_[i]);
    }
    return v;
  }

  std::optional<RingVec<Ring>> coordinates(const RingVec<Ring>& w) const {
    RingVec<Ring> c(rows_.size(), R_.zero());
    RingVec<Ring> rest = w;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      c[i] = w[piv_[i]];
      axpy(R_, rest, R_.neg(c[i]), rows_[i]);
    }
    if (!is_zero_vec(R_, rest)) return std::nullopt;
    return c;
  }

  RingVec<Ring> combine(const RingVec<Ring>& coords) const {
    RingVec<Ring> v(dim_, R_.zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) axpy(R_, v, coords[i], rows_[i]);
    return v;
  }

 private:
  // Add a reduced-or-not vector; false if it has no unit entry after reduction.
  bool insert(const RingVec<Ring>& v0) {
    auto v = reduce(v0);
    std::size_t best = dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (R_.is_pm_one(v[j])) {
        best = j;
        break;
      }
      if (best == dim_ && R_.is_unit(v[j])) best = j;
    }
    if (best == dim_) return is_zero_vec(R_, v);
    auto inv = R_.inv(v[best]);
    for (auto& x : v) x = R_.mul(x, inv);
    for (auto& r : rows_) {
      auto c = r[best];
      if (!R_.is_zero(c)) axpy(R_, r, R_.neg(c), v);
    }
    rows_.push_back(std::move(v));
    piv_.push_back(best);
    return true;
  }

  Ring R_;
  std::size_t dim_;
  std::vector<RingVec<Ring>> rows_;
  std::vector<std::size_t> piv_;
};

// Generators of {v : M v = 0} for M given by rows of length ncols.
// Over Z/p^n these are the Howell kernel rows; over Q an RREF nullspace basis.
template <class Ring>
std::vector<RingVec<Ring>> kernel_generators(const Ring& R, const std::vector<RingVec<Ring>>& rows, std::size_t ncols);

template <>
inline std::vector<RingVec<ResidueRing>> kernel_generators<ResidueRing>(const ResidueRing& R,
                                                                        const std::vector<RingVec<ResidueRing>>& rows,
                                                                        std::size_t ncols) {
  ResidueMatrix m(rows.size(), ncols, R.modulus);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = rows[i][j];
  ResidueMatrix k = howell_kernel(m);
  std::vector<RingVec<ResidueRing>> out;
  for (std::size_t i = 0; i < k.rows(); ++i) out.emplace_back(k.row(i).begin(), k.row(i).end());
  return out;
}

template <>
inline std::vector<RingVec<RationalField>> kernel_generators<RationalField>(
    const RationalField& R, const std::vector<RingVec<RationalField>>& rows0, std::size_t ncols) {
  auto rows = rows0;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    auto inv = R.inv(rows[r][c]);
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][c] != 0) axpy(R, rows[i], R.neg(rows[i][c]), rows[r]);
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(ncols, false);
  for (auto c : pivcol) is_piv[c] = true;
  std::vector<RingVec<RationalField>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    RingVec<RationalField> v(ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -rows[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace modcong
