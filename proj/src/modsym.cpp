#include "modcong/modsym.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace modcong {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// x*a + y*b = g
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i * i != n) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

// Lift (c, d) in (Z/N)^2 with gcd(c, d, N) = 1 to an SL2(Z) matrix with that bottom row.
std::array<std::int64_t, 4> lift_to_sl2(std::int64_t c, std::int64_t d, std::int64_t N) {
  c = floor_mod(c, N);
  d = floor_mod(d, N);
  if (N == 1) return {1, 0, 0, 1};
  if (c == 0) c = N;
  while (gcd64(c, d) != 1) d += N;
  std::int64_t x, y;
  ext_gcd(d, c, x, y);  // x d + y c = 1
  return {x, -y, c, d};
}

}  // namespace

std::uint64_t gamma0_index(std::uint64_t N) {
  std::uint64_t r = N;
  for (auto p : prime_factors(N)) r = r / p * (p + 1);
  return r;
}

std::uint64_t cusp_count_x0(std::uint64_t N) {
  std::uint64_t c = 0;
  for (auto d : divisors(N)) c += euler_phi(std::gcd(d, N / d));
  return c;
}

std::uint64_t genus_x0(std::uint64_t N) {
  const auto ps = prime_factors(N);
  std::int64_t nu2 = 0, nu3 = 0;
  if (N % 4 != 0) {
    nu2 = 1;
    for (auto p : ps) nu2 *= (p == 2) ? 1 : 1 + legendre(-1, p);
  }
  if (N % 9 != 0) {
    nu3 = 1;
    for (auto p : ps) {
      if (p == 2) nu3 *= 0;
      else if (p == 3) nu3 *= 1;
      else nu3 *= 1 + legendre(-3, p);
    }
  }
  auto mu = static_cast<std::int64_t>(gamma0_index(N));
  auto c = static_cast<std::int64_t>(cusp_count_x0(N));
  std::int64_t twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * c;
  if (twelve_g < 0 || twelve_g % 12 != 0) throw ArithmeticError("genus formula produced a non-integer");
  return static_cast<std::uint64_t>(twelve_g / 12);
}

std::uint64_t sturm_bound(std::uint64_t N, int k) {
  std::uint64_t num = static_cast<std::uint64_t>(k) * gamma0_index(N);
  return (num + 11) / 12;
}

// ---- P1List -----------------------------------------------------------------

P1List::P1List(std::uint64_t N) : N_(N) {
  if (N == 0) throw InputError("level must be positive");
  if (N == 1) {
    reps_.emplace_back(0, 1);
    return;
  }
  std::vector<std::uint64_t> units;
  for (std::uint64_t u = 1; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  for (auto g : divisors(N)) {
    std::uint64_t M = N / g;
    auto& fix = units_fixing_[g];
    for (auto u : units)
      if (u % M == 1 % M) fix.push_back(u);
  }
  for (auto g : divisors(N)) {
    const auto& fix = units_fixing_.at(g);
    if (g == N) {
      reps_.emplace_back(0, 1);
      continue;
    }
    for (std::uint64_t d = 0; d < N; ++d) {
      if (std::gcd(g, d) != 1) continue;
      bool canonical = true;
      for (auto v : fix) {
        if (v * d % N < d) {
          canonical = false;
          break;
        }
      }
      if (canonical) reps_.emplace_back(static_cast<std::int64_t>(g), static_cast<std::int64_t>(d));
    }
  }
  if (reps_.size() != gamma0_index(N)) throw ArithmeticError("P1 enumeration size mismatch");
  if (N <= 2500) {
    table_.assign(N * N, -1);
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      auto c = static_cast<std::uint64_t>(reps_[i].first), d = static_cast<std::uint64_t>(reps_[i].second);
      for (auto u : units) table_[(u * c % N) * N + u * d % N] = static_cast<std::int32_t>(i);
    }
  } else {
    for (std::size_t i = 0; i < reps_.size(); ++i)
      lookup_[static_cast<std::uint64_t>(reps_[i].first) * N + static_cast<std::uint64_t>(reps_[i].second)] = i;
  }
}

std::pair<std::uint64_t, std::uint64_t> P1List::normalize(std::uint64_t c, std::uint64_t d) const {
  const std::uint64_t N = N_;
  std::uint64_t g = std::gcd(c, N);
  if (std::gcd(g, d) != 1) return {N, N};
  if (g == N) return {0, 1};
  std::uint64_t M = N / g;
  std::uint64_t u = *invmod((c / g) % M, M);
  while (std::gcd(u, N) != 1) u += M;
  std::uint64_t d1 = static_cast<std::uint64_t>(static_cast<unsigned __int128>(u) * d % N);
  std::uint64_t best = d1;
  for (auto v : units_fixing_.at(g)) best = std::min(best, static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) * d1 % N));
  return {g, best};
}

std::int64_t P1List::try_index(std::int64_t c, std::int64_t d) const {
  if (N_ == 1) return 0;
  auto N = static_cast<std::int64_t>(N_);
  auto cc = static_cast<std::uint64_t>(floor_mod(c, N)), dd = static_cast<std::uint64_t>(floor_mod(d, N));
  if (!table_.empty()) return table_[cc * N_ + dd];
  auto [g, e] = normalize(cc, dd);
  if (g == N_) return -1;
  auto it = lookup_.find(g * N_ + e);
  return it == lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t P1List::index(std::int64_t c, std::int64_t d) const {
  auto i = try_index(c, d);
  if (i < 0) throw ArithmeticError("(" + std::to_string(c) + ":" + std::to_string(d) + ") is not in P1(Z/" + std::to_string(N_) + ")");
  return static_cast<std::size_t>(i);
}

std::vector<std::array<std::int64_t, 4>> heilbronn_merel(std::uint64_t l) {
  auto L = static_cast<std::int64_t>(l);
  std::vector<std::array<std::int64_t, 4>> out;
  for (std::int64_t a = 1; a <= L; ++a) {
    // b = 0: a d = l, c free in [0, d)
    if (L % a == 0) {
      std::int64_t d = L / a;
      for (std::int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
    }
    for (std::int64_t b = 1; b < a; ++b) {
      // a d - b c = l with 0 <= c < d  =>  l/a <= d < l/(a-b)
      for (std::int64_t d = (L + a - 1) / a; d * (a - b) < L; ++d) {
        std::int64_t t = a * d - L;
        if (t % b != 0) continue;
        std::int64_t c = t / b;
        if (c >= 0 && c < d) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

// ---- ModularSymbolSpace -----------------------------------------------------

namespace {

std::uint64_t checked_level(std::uint64_t level) {
  if (level > kMaxModsymLevel)
    throw ResourceBoundExceeded("level " + std::to_string(level) + " exceeds the supported bound " + std::to_string(kMaxModsymLevel));
  return level;
}

}  // namespace

template <class Ring>
ModularSymbolSpace<Ring>::ModularSymbolSpace(std::uint64_t level, Ring ring)
    : N_(level), R_(std::move(ring)), p1_(checked_level(level)), cusp_basis_(R_, 0) {
  build_relations();
  build_boundary();
}

namespace {

template <class Ring>
using SparseRow = std::vector<std::pair<std::uint32_t, typename Ring::value_type>>;

// a + c * b, both sorted by index
template <class Ring>
SparseRow<Ring> sparse_axpy(const Ring& R, const SparseRow<Ring>& a, const typename Ring::value_type& c,
                            const SparseRow<Ring>& b) {
  SparseRow<Ring> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto v = R.mul(c, b[j].second);
      if (!R.is_zero(v)) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      auto v = R.add(a[i].second, R.mul(c, b[j].second));
      if (!R.is_zero(v)) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

template <class Ring>
void ModularSymbolSpace<Ring>::build_relations() {
  const std::size_t P = p1_.size();
  auto S = [&](std::size_t i) {
    auto [c, d] = p1_.rep(i);
    return p1_.index(d, -c);
  };
  auto T = [&](std::size_t i) {
    auto [c, d] = p1_.rep(i);
    return p1_.index(d, -c - d);
  };

  // Two-term relations: x + xS = 0.
  std::vector<std::int64_t> var(P, -1);
  std::vector<int> sgn(P, 0);
  std::uint32_t nvars = 0;
  std::vector<std::size_t> var_symbol;
  for (std::size_t i = 0; i < P; ++i) {
    if (var[i] != -1 || sgn[i] != 0) continue;
    std::size_t j = S(i);
    if (j == i) {
      sgn[i] = 2;  // forced zero
      continue;
    }
    var[i] = var[j] = nvars++;
    sgn[i] = 1;
    sgn[j] = -1;
    var_symbol.push_back(i);
  }

  // Three-term relations: x + x tau + x tau^2 = 0.
  std::vector<SparseRow<Ring>> rels;
  std::vector<bool> seen(P, false);
  for (std::size_t i = 0; i < P; ++i) {
    if (seen[i]) continue;
    std::size_t j = T(i), k = T(j);
    seen[i] = seen[j] = seen[k] = true;
    std::map<std::uint32_t, std::int64_t> terms;
    auto add = [&](std::size_t s, std::int64_t coef) {
      if (var[s] >= 0) terms[static_cast<std::uint32_t>(var[s])] += coef * sgn[s];
    };
    if (j == i) {
      add(i, 3);
    } else {
      add(i, 1);
      add(j, 1);
      add(k, 1);
    }
    SparseRow<Ring> r;
    for (auto [v, c] : terms) {
      auto x = R_.from_int(c);
      if (!R_.is_zero(x)) r.emplace_back(v, x);
    }
    if (!r.empty()) rels.push_back(std::move(r));
  }

  // Sparse elimination; pivots prefer +-1 coefficients and late variables.
  std::vector<std::int64_t> pivot_of(nvars, -1);
  std::vector<SparseRow<Ring>> prow;
  std::vector<std::uint32_t> pvar;
  for (auto& r : rels) {
    for (;;) {
      std::int64_t best = -1;
      std::size_t pos = 0;
      for (std::size_t t = 0; t < r.size(); ++t) {
        auto pk = pivot_of[r[t].first];
        if (pk >= 0 && (best < 0 || pk < best)) {
          best = pk;
          pos = t;
        }
      }
      if (best < 0) break;
      r = sparse_axpy(R_, r, R_.neg(r[pos].second), prow[static_cast<std::size_t>(best)]);
    }
    if (r.empty()) continue;
    std::int64_t choice = -1;
    bool choice_pm1 = false;
    for (std::size_t t = 0; t < r.size(); ++t) {
      if (!R_.is_unit(r[t].second)) continue;
      bool pm1 = R_.is_pm_one(r[t].second);
      if (choice < 0 || (pm1 && !choice_pm1) || (pm1 == choice_pm1)) {
        choice = static_cast<std::int64_t>(t);
        choice_pm1 = pm1;
      }
    }
    if (choice < 0) throw ArithmeticError("Manin symbol relations have torsion over the coefficient ring at level " + std::to_string(N_));
    auto inv = R_.inv(r[static_cast<std::size_t>(choice)].second);
    for (auto& e : r) e.second = R_.mul(e.second, inv);
    pivot_of[r[static_cast<std::size_t>(choice)].first] = static_cast<std::int64_t>(prow.size());
    pvar.push_back(r[static_cast<std::size_t>(choice)].first);
    prow.push_back(std::move(r));
  }

  std::vector<std::int64_t> free_index(nvars, -1);
  for (std::uint32_t v = 0; v < nvars; ++v) {
    if (pivot_of[v] < 0) {
      free_index[v] = static_cast<std::int64_t>(gens_.size());
      gens_.push_back(var_symbol[v]);
    }
  }
  const std::size_t d = gens_.size();

  std::vector<Sparse> var_expr(nvars);
  for (std::uint32_t v = 0; v < nvars; ++v)
    if (free_index[v] >= 0) var_expr[v] = {{static_cast<std::uint32_t>(free_index[v]), R_.one()}};
  std::vector<Value> dense(d, R_.zero());
  for (std::size_t k = prow.size(); k-- > 0;) {
    std::fill(dense.begin(), dense.end(), R_.zero());
    for (const auto& [w, c] : prow[k]) {
      if (w == pvar[k]) continue;
      if (pivot_of[w] >= 0 && static_cast<std::size_t>(pivot_of[w]) <= k)
        throw ArithmeticError("internal: unresolved pivot during back substitution");
      for (const auto& [f, e] : var_expr[w]) dense[f] = R_.sub(dense[f], R_.mul(c, e));
    }
    Sparse s;
    for (std::uint32_t f = 0; f < d; ++f)
      if (!R_.is_zero(dense[f])) s.emplace_back(f, dense[f]);
    var_expr[pvar[k]] = std::move(s);
  }

  expr_.assign(P, {});
  for (std::size_t i = 0; i < P; ++i) {
    if (var[i] < 0) continue;
    const auto& e = var_expr[static_cast<std::size_t>(var[i])];
    if (sgn[i] == 1) {
      expr_[i] = e;
    } else {
      for (const auto& [f, c] : e) expr_[i].emplace_back(f, R_.neg(c));
    }
  }

  for (auto g : gens_) {
    auto [c, dd] = p1_.rep(g);
    lifts_.push_back(lift_to_sl2(c, dd, static_cast<std::int64_t>(N_)));
  }
}

template <class Ring>
std::size_t ModularSymbolSpace<Ring>::cusp_class(std::int64_t u, std::int64_t v) {
  std::int64_t g = gcd64(u, v);
  u /= g;
  v /= g;
  if (v < 0 || (v == 0 && u < 0)) {
    u = -u;
    v = -v;
  }
  const auto N = static_cast<std::int64_t>(N_);
  auto s_of = [](std::int64_t uu, std::int64_t vv) -> std::int64_t {
    if (vv == 0) return uu;
    if (vv == 1) return 0;
    return static_cast<std::int64_t>(*invmod(static_cast<std::uint64_t>(floor_mod(uu, vv)), static_cast<std::uint64_t>(vv)));
  };
  const std::int64_t s = s_of(u, v);
  for (std::size_t i = 0; i < cusps_.size(); ++i) {
    auto [u2, v2] = cusps_[i];
    std::int64_t s2 = s_of(u2, v2);
    std::int64_t m = gcd64(floor_mod(floor_mod(v, N) * floor_mod(v2, N), N), N);
    if (m == 0) m = N;
    if (floor_mod(s * v2 - s2 * v, m) == 0) return i;
  }
  cusps_.emplace_back(u, v);
  return cusps_.size() - 1;
}

template <class Ring>
void ModularSymbolSpace<Ring>::build_boundary() {
  const std::size_t d = gens_.size();
  gen_boundary_.assign(d, {});
  for (std::size_t j = 0; j < d; ++j) {
    auto [a, b, c, dd] = lifts_[j];
    std::size_t inf = cusp_class(a, c), zero = cusp_class(b, dd);
    if (inf != zero) gen_boundary_[j] = {{inf, 1}, {zero, -1}};
  }
  std::vector<Vec> rows(cusps_.size(), Vec(d, R_.zero()));
  for (std::size_t j = 0; j < d; ++j)
    for (auto [k, s] : gen_boundary_[j]) rows[k][j] = R_.add(rows[k][j], R_.from_int(s));
  auto ker = kernel_generators(R_, rows, d);
  cusp_basis_ = FreeBasis<Ring>::from_vectors(R_, d, ker);
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Vec ModularSymbolSpace<Ring>::boundary(const Vec& v) const {
  Vec out(cusps_.size(), R_.zero());
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    if (R_.is_zero(v[j])) continue;
    for (auto [k, s] : gen_boundary_[j]) out[k] = R_.add(out[k], R_.mul(R_.from_int(s), v[j]));
  }
  return out;
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Vec ModularSymbolSpace<Ring>::collapse(const std::vector<Value>& acc) const {
  Vec out(gens_.size(), R_.zero());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (R_.is_zero(acc[i])) continue;
    for (const auto& [f, c] : expr_[i]) out[f] = R_.add(out[f], R_.mul(acc[i], c));
  }
  return out;
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Vec ModularSymbolSpace<Ring>::collapse_int(const std::vector<std::int64_t>& acc) const {
  std::vector<Value> a(acc.size(), R_.zero());
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (acc[i] != 0) a[i] = R_.from_int(acc[i]);
  return collapse(a);
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Vec ModularSymbolSpace<Ring>::manin_symbol(std::int64_t c, std::int64_t d) const {
  std::vector<std::int64_t> acc(p1_.size(), 0);
  acc[p1_.index(c, d)] = 1;
  return collapse_int(acc);
}

template <class Ring>
void ModularSymbolSpace<Ring>::add_zero_to(std::vector<std::int64_t>& acc, const Cusp& b, std::int64_t coef) const {
  std::int64_t num = b.num, den = b.den;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  // {0, oo} = [(0:1)]
  acc[p1_.index(0, 1)] += coef;
  if (den == 0) return;
  // Convergents p_k/q_k of num/den; {p_{k-1}/q_{k-1}, p_k/q_k} has bottom row ((-1)^{k-1} q_k, q_{k-1}).
  std::int64_t p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  int k = 0;
  while (den != 0) {
    std::int64_t a = floor_div(num, den);
    std::int64_t r = num - a * den;
    num = den;
    den = r;
    std::int64_t pk = a * p1 + p2, qk = a * q1 + q2;
    std::int64_t c = (k % 2 == 0) ? -qk : qk;  // (-1)^{k-1}
    acc[p1_.index(c, q1)] += coef;
    p2 = p1;
    q2 = q1;
    p1 = pk;
    q1 = qk;
    ++k;
  }
}

template <class Ring>
void ModularSymbolSpace<Ring>::add_modular_symbol(std::vector<std::int64_t>& acc, const Cusp& a, const Cusp& b,
                                                  std::int64_t coef) const {
  add_zero_to(acc, b, coef);
  add_zero_to(acc, a, -coef);
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Vec ModularSymbolSpace<Ring>::modular_symbol(const Cusp& a, const Cusp& b) const {
  std::vector<std::int64_t> acc(p1_.size(), 0);
  add_modular_symbol(acc, a, b, 1);
  return collapse_int(acc);
}

template <class Ring>
void ModularSymbolSpace<Ring>::check_label(const HeckeLabel& op) const {
  if (!is_prime(op.prime)) throw InputError(op.name() + ": index is not prime");
  bool divides = N_ % op.prime == 0;
  if (op.kind == HeckeLabel::Kind::T && divides)
    throw InputError(op.name() + " requested at level " + std::to_string(N_) + "; use U_" + std::to_string(op.prime));
  if (op.kind == HeckeLabel::Kind::U && !divides)
    throw InputError(op.name() + " requested but " + std::to_string(op.prime) + " does not divide " + std::to_string(N_));
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Counts ModularSymbolSpace<Ring>::heilbronn_counts(std::uint64_t l) const {
  const auto hs = heilbronn_merel(l);
  Counts out(gens_.size());
  std::vector<std::int64_t> acc(p1_.size(), 0);
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    auto [c, d] = p1_.rep(gens_[j]);
    for (const auto& h : hs) {
      auto idx = p1_.try_index(c * h[0] + d * h[2], c * h[1] + d * h[3]);
      if (idx >= 0) ++acc[static_cast<std::size_t>(idx)];
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] != 0) {
        out[j].emplace_back(static_cast<std::uint32_t>(i), acc[i]);
        acc[i] = 0;
      }
    }
  }
  return out;
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Counts ModularSymbolSpace<Ring>::coset_counts(const HeckeLabel& op) const {
  const auto l = static_cast<std::int64_t>(op.prime);
  Counts out(gens_.size());
  std::vector<std::int64_t> acc(p1_.size(), 0);
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    auto [a, b, c, d] = lifts_[j];
    // generator is {b/d, a/c}; apply z -> (z + i)/l and, for T_l, z -> l z
    for (std::int64_t i = 0; i < l; ++i) add_modular_symbol(acc, {b + i * d, l * d}, {a + i * c, l * c}, 1);
    if (op.kind == HeckeLabel::Kind::T) add_modular_symbol(acc, {l * b, d}, {l * a, c}, 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] != 0) {
        out[j].emplace_back(static_cast<std::uint32_t>(i), acc[i]);
        acc[i] = 0;
      }
    }
  }
  return out;
}

template <class Ring>
std::vector<typename ModularSymbolSpace<Ring>::Vec> ModularSymbolSpace<Ring>::apply_counts(
    const Counts& counts, const std::vector<Vec>& vs) const {
  std::vector<Vec> out;
  out.reserve(vs.size());
  std::vector<Value> acc(p1_.size(), R_.zero());
  for (const auto& v : vs) {
    if (v.size() != gens_.size()) throw ArithmeticError("vector length does not match the ambient dimension");
    std::fill(acc.begin(), acc.end(), R_.zero());
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (R_.is_zero(v[j])) continue;
      for (const auto& [i, n] : counts[j]) acc[i] = R_.add(acc[i], R_.mul(v[j], R_.from_int(n)));
    }
    out.push_back(collapse(acc));
  }
  return out;
}

template <class Ring>
std::vector<typename ModularSymbolSpace<Ring>::Vec> ModularSymbolSpace<Ring>::apply(const HeckeLabel& op,
                                                                                   const std::vector<Vec>& vs) const {
  check_label(op);
  if (op.kind == HeckeLabel::Kind::T) return apply_counts(heilbronn_counts(op.prime), vs);
  return apply_counts(coset_counts(op), vs);
}

template <class Ring>
std::vector<typename ModularSymbolSpace<Ring>::Vec> ModularSymbolSpace<Ring>::apply_by_cosets(
    const HeckeLabel& op, const std::vector<Vec>& vs) const {
  check_label(op);
  return apply_counts(coset_counts(op), vs);
}

template <class Ring>
std::vector<typename ModularSymbolSpace<Ring>::Vec> ModularSymbolSpace<Ring>::apply_heilbronn(
    const HeckeLabel& op, const std::vector<Vec>& vs) const {
  check_label(op);
  return apply_counts(heilbronn_counts(op.prime), vs);
}

template <class Ring>
typename ModularSymbolSpace<Ring>::Vec ModularSymbolSpace<Ring>::cuspidal_coordinates(const Vec& v) const {
  auto c = cusp_basis_.coordinates(v);
  if (!c) throw ArithmeticError("vector is not in the cuspidal subspace");
  return *c;
}

template <class Ring>
RingMatrix<Ring> ModularSymbolSpace<Ring>::hecke_operator(const HeckeLabel& op) const {
  const auto& basis = cusp_basis_.rows();
  auto images = apply(op, basis);
  RingMatrix<Ring> m;
  m.n = basis.size();
  m.rows.assign(m.n, Vec(m.n, R_.zero()));
  for (std::size_t j = 0; j < m.n; ++j) {
    auto c = cuspidal_coordinates(images[j]);
    for (std::size_t i = 0; i < m.n; ++i) m.rows[i][j] = c[i];
  }
  return m;
}

template <class Ring>
std::vector<RingVec<Ring>> degeneracy_images(const ModularSymbolSpace<Ring>& from, const ModularSymbolSpace<Ring>& to,
                                             std::uint64_t t) {
  const std::uint64_t M = from.level(), N = to.level();
  if (N % M != 0) throw InputError("degeneracy map: target level must be a multiple of the source level");
  if (t == 0 || (N / M) % t != 0) throw InputError("degeneracy map: t must divide N/M");
  const std::uint64_t index = gamma0_index(N) / gamma0_index(M);
  // Right cosets of {t | b, N/t | c} in Gamma0(M) are separated by the top
  // row in P1(Z/t) and the bottom row in P1(Z/(N/t)).
  P1List top(t), bottom(N / t);
  std::map<std::pair<std::int64_t, std::int64_t>, std::array<std::int64_t, 4>> reps;
  const auto Mi = static_cast<std::int64_t>(M), ti = static_cast<std::int64_t>(t);
  const auto span = static_cast<std::int64_t>(N / t + M + 2);
  for (std::int64_t k = 0; reps.size() < index && k <= span; ++k) {
    std::int64_t c = Mi * k;
    for (std::int64_t d = (k == 0 ? 1 : -span); reps.size() < index && d <= (k == 0 ? 1 : span); ++d) {
      if (std::gcd(c, d) != 1) continue;
      std::int64_t x, y;
      ext_gcd(d, c, x, y);  // x d + y c = 1
      std::int64_t a = x, b = -y;
      for (std::int64_t s = 0; s < ti && reps.size() < index; ++s) {
        std::int64_t aa = a + s * c, bb = b + s * d;
        auto key = std::make_pair(top.try_index(aa, bb), bottom.try_index(c, d));
        if (key.first < 0 || key.second < 0) continue;
        reps.emplace(key, std::array<std::int64_t, 4>{aa, bb, c, d});
      }
    }
  }
  if (reps.size() != index) throw ArithmeticError("degeneracy map: coset enumeration incomplete");

  const Ring& R = to.ring();
  std::vector<RingVec<Ring>> images;
  for (std::size_t j = 0; j < from.ambient_dim(); ++j) {
    auto g = from.generator_lift(j);
    RingVec<Ring> img(to.ambient_dim(), R.zero());
    for (const auto& [key, gam] : reps) {
      // A = gam * g
      std::int64_t A0 = gam[0] * g[0] + gam[1] * g[2], A1 = gam[0] * g[1] + gam[1] * g[3];
      std::int64_t A2 = gam[2] * g[0] + gam[3] * g[2], A3 = gam[2] * g[1] + gam[3] * g[3];
      auto s = to.modular_symbol({A1, A3 * ti}, {A0, A2 * ti});
      for (std::size_t i = 0; i < s.size(); ++i) img[i] = R.add(img[i], s[i]);
    }
    images.push_back(std::move(img));
  }
  return images;
}

template <class Ring>
std::vector<RingVec<Ring>> lowering_images(const ModularSymbolSpace<Ring>& from, const ModularSymbolSpace<Ring>& to,
                                           std::uint64_t t) {
  if (t == 0 || from.level() % (to.level() * t) != 0) throw InputError("lowering map: need M t | N");
  const auto ti = static_cast<std::int64_t>(t);
  std::vector<RingVec<Ring>> images;
  for (std::size_t j = 0; j < from.ambient_dim(); ++j) {
    auto [a, b, c, d] = from.generator_lift(j);
    images.push_back(to.modular_symbol({ti * b, d}, {ti * a, c}));
  }
  return images;
}

template <class Ring>
RingVec<Ring> apply_generator_images(const Ring& R, const std::vector<RingVec<Ring>>& images, const RingVec<Ring>& v,
                                     std::size_t target_dim) {
  if (v.size() != images.size()) throw ArithmeticError("apply_generator_images: dimension mismatch");
  RingVec<Ring> out(target_dim, R.zero());
  for (std::size_t j = 0; j < v.size(); ++j) axpy(R, out, v[j], images[j]);
  return out;
}

ResidueMatrix to_residue_matrix(const RingMatrix<ResidueRing>& m, const PrimePowerModulus& mod) {
  ResidueMatrix r(m.n, m.n, mod);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) r.at(i, j) = m.rows[i][j];
  return r;
}

template class ModularSymbolSpace<ResidueRing>;
template class ModularSymbolSpace<RationalField>;
template std::vector<RingVec<ResidueRing>> degeneracy_images(const ModularSymbolSpace<ResidueRing>&,
                                                             const ModularSymbolSpace<ResidueRing>&, std::uint64_t);
template std::vector<RingVec<RationalField>> degeneracy_images(const ModularSymbolSpace<RationalField>&,
                                                               const ModularSymbolSpace<RationalField>&, std::uint64_t);
template std::vector<RingVec<ResidueRing>> lowering_images(const ModularSymbolSpace<ResidueRing>&,
                                                           const ModularSymbolSpace<ResidueRing>&, std::uint64_t);
template std::vector<RingVec<RationalField>> lowering_images(const ModularSymbolSpace<RationalField>&,
                                                             const ModularSymbolSpace<RationalField>&, std::uint64_t);
template RingVec<ResidueRing> apply_generator_images(const ResidueRing&, const std::vector<RingVec<ResidueRing>>&,
                                                     const RingVec<ResidueRing>&, std::size_t);
template RingVec<RationalField> apply_generator_images(const RationalField&, const std::vector<RingVec<RationalField>>&,
                                                       const RingVec<RationalField>&, std::size_t);

}  // namespace modcong
