#include "modcong/linalg.hpp"

#include <algorithm>

namespace modcong {

namespace {

using Row = std::vector<std::uint64_t>;

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](std::uint64_t v) { return v == 0; });
}

// r -= f * s over Z/m
void sub_mul(Row& r, std::uint64_t f, const Row& s, std::uint64_t m) {
  if (f == 0) return;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (s[j] == 0) continue;
    std::uint64_t t = mulmod(f, s[j], m);
    r[j] = r[j] >= t ? r[j] - t : r[j] + m - t;
  }
}

void scale(Row& r, std::uint64_t f, std::uint64_t m) {
  for (auto& v : r) v = mulmod(v, f, m);
}

ResidueMatrix howell_rows(std::vector<Row> pool, std::size_t cols, const PrimePowerModulus& mod) {
  const std::uint64_t m = mod.value();
  const int n = mod.n();
  std::vector<Row> out;
  std::vector<std::size_t> piv_col;
  std::vector<int> piv_exp;
  std::erase_if(pool, row_is_zero);

  for (std::size_t c = 0; c < cols && !pool.empty(); ++c) {
    std::size_t best = pool.size();
    int best_v = n;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      int v = mod.valuation(pool[i][c]);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == pool.size()) continue;
    Row r = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const std::uint64_t pk = mod.power(best_v);
    scale(r, *invmod(r[c] / pk, m), m);  // pivot becomes p^k
    for (auto& s : pool) {
      if (s[c] != 0) sub_mul(s, s[c] / pk, r, m);
    }
    if (best_v > 0) {
      Row extra = r;
      scale(extra, mod.power(n - best_v), m);
      if (!row_is_zero(extra)) pool.push_back(std::move(extra));
    }
    std::erase_if(pool, row_is_zero);
    out.push_back(std::move(r));
    piv_col.push_back(c);
    piv_exp.push_back(best_v);
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t pk = mod.power(piv_exp[i]);
    for (std::size_t j = 0; j < i; ++j) {
      std::uint64_t q = out[j][piv_col[i]] / pk;
      if (q != 0) sub_mul(out[j], q, out[i], m);
    }
  }

  ResidueMatrix res(0, cols, mod);
  for (const auto& r : out) res.append_row(r);
  return res;
}

}  // namespace

ResidueMatrix howell_form(const ResidueMatrix& a) {
  std::vector<Row> pool;
  for (std::size_t i = 0; i < a.rows(); ++i) pool.emplace_back(a.row(i).begin(), a.row(i).end());
  return howell_rows(std::move(pool), a.cols(), a.modulus());
}

ResidueMatrix howell_span(const std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols,
                          const PrimePowerModulus& mod) {
  std::vector<Row> pool;
  for (const auto& r : rows) {
    if (r.size() != cols) throw ArithmeticError("howell_span: row length mismatch");
    Row c(r);
    for (auto& v : c) v %= mod.value();
    pool.push_back(std::move(c));
  }
  return howell_rows(std::move(pool), cols, mod);
}

ResidueMatrix howell_kernel(const ResidueMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  // Rows of [a^T | I]; combinations with zero left block are kernel vectors.
  std::vector<Row> pool(c, Row(r + c, 0));
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < r; ++i) pool[j][i] = a.at(i, j);
    pool[j][r + j] = 1;
  }
  ResidueMatrix h = howell_rows(std::move(pool), r + c, a.modulus());
  ResidueMatrix k(0, c, a.modulus());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    bool left_zero = std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(r),
                                 [](std::uint64_t v) { return v == 0; });
    if (left_zero) k.append_row(row.subspan(r));
  }
  return k;
}

std::size_t free_rank(const ResidueMatrix& span) {
  const auto& mod = span.modulus();
  ResidueMatrix t = span.scaled(mod.power(mod.n() - 1));
  return howell_form(t).rows();
}

std::size_t module_length(const ResidueMatrix& h) {
  const auto& mod = h.modulus();
  std::size_t len = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (h.at(i, j) != 0) {
        len += static_cast<std::size_t>(mod.n() - mod.valuation(h.at(i, j)));
        break;
      }
    }
  }
  return len;
}

bool howell_contains(const ResidueMatrix& h, std::span<const std::uint64_t> v) {
  const auto& mod = h.modulus();
  if (v.size() != h.cols()) throw ArithmeticError("howell_contains: length mismatch");
  Row w(v.begin(), v.end());
  for (auto& x : w) x %= mod.value();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    // pivot is p^k; w must be divisible at c before the pivot row can clear it
    const std::uint64_t pk = row[c];
    for (std::size_t j = 0; j < c; ++j)
      if (w[j] != 0) return false;
    if (w[c] % pk != 0) return false;
    Row rr(row.begin(), row.end());
    sub_mul(w, w[c] / pk, rr, mod.value());
  }
  return row_is_zero(w);
}

}  // namespace modcong
