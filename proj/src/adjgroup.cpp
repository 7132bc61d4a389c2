#include "modcong/adjgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "modcong/arith.hpp"

namespace modcong::adj {

namespace {

constexpr int P = 5;

int md(int a) { return ((a % P) + P) % P; }

int inv5(int a) {
  for (int x = 1; x < P; ++x)
    if (md(a * x) == 1) return x;
  throw InputError("zero has no inverse");
}

Mat matmul(const Mat& a, const Mat& b) {
  return {md(a[0] * b[0] + a[1] * b[2]), md(a[0] * b[1] + a[1] * b[3]), md(a[2] * b[0] + a[3] * b[2]),
          md(a[2] * b[1] + a[3] * b[3])};
}

struct Tables {
  std::vector<Mat> elts;
  std::map<Mat, int> index;
  std::vector<std::array<int, 120>> mul;
  std::vector<int> inv;
  Tables() {
    for (int a = 0; a < P; ++a)
      for (int b = 0; b < P; ++b)
        for (int c = 0; c < P; ++c)
          for (int d = 0; d < P; ++d) {
            Mat m{a, b, c, d};
            if (md(a * d - b * c) == 0) continue;
            Mat k = canonical(m);
            if (k == m) {
              index[m] = static_cast<int>(elts.size());
              elts.push_back(m);
            }
          }
    mul.resize(elts.size());
    inv.resize(elts.size());
    const int one = index.at({1, 0, 0, 1});
    for (std::size_t i = 0; i < elts.size(); ++i)
      for (std::size_t j = 0; j < elts.size(); ++j) {
        int k = index.at(canonical(matmul(elts[i], elts[j])));
        mul[i][j] = k;
        if (k == one) inv[i] = static_cast<int>(j);
      }
  }
};

const Tables& T() {
  static const Tables t;
  return t;
}

Mat to_mat(const Vec& v) { return {md(v[0]), md(v[1]), md(v[2]), md(-v[0])}; }

bool same(const Vec& a, const Vec& b) { return md(a[0]) == md(b[0]) && md(a[1]) == md(b[1]) && md(a[2]) == md(b[2]); }

std::vector<Vec> all_vectors() {
  std::vector<Vec> out;
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b)
      for (int c = 0; c < P; ++c) out.push_back({a, b, c});
  return out;
}

std::vector<Vec> span_elements(const std::vector<Vec>& basis) {
  std::vector<Vec> out;
  for (const auto& v : all_vectors())
    if (in_span(basis, v)) out.push_back(v);
  return out;
}

}  // namespace

Mat canonical(const Mat& m) {
  Mat r{md(m[0]), md(m[1]), md(m[2]), md(m[3])};
  if (md(r[0] * r[3] - r[1] * r[2]) == 0) throw InputError("singular matrix");
  int lead = 0;
  for (int x : r)
    if (x != 0) {
      lead = x;
      break;
    }
  int s = inv5(lead);
  for (int& x : r) x = md(x * s);
  return r;
}

const std::vector<Mat>& elements() { return T().elts; }
Elt index_of(const Mat& m) { return T().index.at(canonical(m)); }
Elt identity() { return index_of({1, 0, 0, 1}); }
Elt mul(Elt g, Elt h) { return T().mul[g][h]; }
Elt inv(Elt g) { return T().inv[g]; }

Vec add(const Vec& a, const Vec& b) { return {md(a[0] + b[0]), md(a[1] + b[1]), md(a[2] + b[2])}; }
Vec scale(int c, const Vec& a) { return {md(c * a[0]), md(c * a[1]), md(c * a[2])}; }

Vec adjoint_action(Elt g, const Vec& m) {
  const Mat& a = elements()[g];
  const int det = md(a[0] * a[3] - a[1] * a[2]);
  const int di = inv5(det);
  Mat ai{md(a[3] * di), md(-a[1] * di), md(-a[2] * di), md(a[0] * di)};
  Mat r = matmul(matmul(a, to_mat(m)), ai);
  return {r[0], r[1], r[2]};
}

Subgroup generate(const std::vector<Elt>& gens) {
  Subgroup s;
  std::vector<Elt> frontier{identity()};
  s.set(identity());
  while (!frontier.empty()) {
    std::vector<Elt> next;
    for (Elt x : frontier)
      for (Elt g : gens) {
        Elt y = mul(x, g);
        if (!s.test(y)) {
          s.set(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return s;
}

std::vector<Elt> members(const Subgroup& s) {
  std::vector<Elt> out;
  for (int i = 0; i < 120; ++i)
    if (s.test(i)) out.push_back(i);
  return out;
}

int rank(const std::vector<Vec>& vs) {
  std::vector<Vec> rows;
  for (const auto& v : vs) rows.push_back({md(v[0]), md(v[1]), md(v[2])});
  int r = 0;
  for (int c = 0; c < 3 && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    int s = inv5(rows[r][c]);
    rows[r] = scale(s, rows[r]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != r && rows[i][c]) rows[i] = add(rows[i], scale(P - rows[i][c], rows[r]));
    ++r;
  }
  return r;
}

bool in_span(const std::vector<Vec>& span, const Vec& v) {
  auto w = span;
  w.push_back(v);
  return rank(w) == rank(span);
}

bool invariant_decomposition_check(const std::vector<Elt>& gens, const std::vector<Vec>& V1,
                                   const std::vector<Vec>& V2) {
  auto all = V1;
  all.insert(all.end(), V2.begin(), V2.end());
  if (rank(all) != 3 || rank(V1) + rank(V2) != 3) throw InputError("V1 and V2 are not complementary");
  for (Elt g : gens)
    for (const auto* V : {&V1, &V2})
      for (const auto& v : *V)
        if (!in_span(*V, adjoint_action(g, v))) return false;
  return true;
}

Subgroup stabilizer_in(const Subgroup& H, const Vec& m) {
  Subgroup s;
  for (Elt g : members(H))
    if (same(adjoint_action(g, m), m)) s.set(g);
  return s;
}

SemidirectElement sd_mul(const SemidirectElement& a, const SemidirectElement& b) {
  return {mul(a.g, b.g), add(a.m, adjoint_action(a.g, b.m))};
}

SemidirectElement sd_inv(const SemidirectElement& a) {
  Elt gi = inv(a.g);
  return {gi, scale(P - 1, adjoint_action(gi, a.m))};
}

bool acts_trivially(const Subgroup& H, const std::vector<Vec>& V) {
  for (Elt g : members(H))
    for (const auto& v : V)
      if (!same(adjoint_action(g, v), v)) return false;
  return true;
}

bool semidirect_normal(const Subgroup& inner, const std::vector<Vec>& inner_module, const Subgroup& outer) {
  auto small = span_elements(inner_module);
  auto whole = all_vectors();
  for (Elt h : members(outer))
    for (const auto& v : whole) {
      SemidirectElement x{h, v};
      SemidirectElement xi = sd_inv(x);
      for (Elt g : members(inner))
        for (const auto& w : small) {
          auto c = sd_mul(sd_mul(x, {g, w}), xi);
          if (!inner.test(c.g) || !in_span(inner_module, c.m)) return false;
        }
    }
  return true;
}

bool normality_check(const Subgroup& H, const std::vector<Vec>& V1, const std::vector<Vec>& V2) {
  if (rank(V1) != 1) throw InputError("V1 must be one-dimensional");
  if (!invariant_decomposition_check(members(H), V1, V2)) throw InputError("H does not preserve V1 + V2");
  return semidirect_normal(H, V2, H);
}

std::vector<std::vector<Vec>> invariant_subspaces(const std::vector<Elt>& gens) {
  // lines and planes, planes as kernels of a linear form
  std::vector<std::vector<Vec>> out;
  std::vector<Vec> reps;
  for (const auto& v : all_vectors()) {
    if (v == Vec{0, 0, 0}) continue;
    int lead = v[0] ? v[0] : (v[1] ? v[1] : v[2]);
    if (lead == 1) reps.push_back(v);
  }
  auto stable = [&](const std::vector<Vec>& basis) {
    for (Elt g : gens)
      for (const auto& b : basis)
        if (!in_span(basis, adjoint_action(g, b))) return false;
    return true;
  };
  for (const auto& v : reps)
    if (stable({v})) out.push_back({v});
  for (const auto& f : reps) {
    std::vector<Vec> basis;
    for (const auto& v : reps)
      if (md(f[0] * v[0] + f[1] * v[1] + f[2] * v[2]) == 0 && !in_span(basis, v)) basis.push_back(v);
    if (stable(basis)) out.push_back(basis);
  }
  return out;
}

std::string isomorphism_label(const Subgroup& s) {
  auto el = members(s);
  const std::size_t n = el.size();
  bool abelian = true;
  std::size_t center = 0;
  for (Elt a : el) {
    bool central = true;
    for (Elt b : el)
      if (mul(a, b) != mul(b, a)) central = false;
    if (central) ++center;
    else abelian = false;
  }
  std::size_t exponent = 1;
  for (Elt a : el) {
    std::size_t k = 1;
    for (Elt x = a; x != identity(); x = mul(x, a)) ++k;
    exponent = std::lcm(exponent, k);
  }
  switch (n) {
    case 1: return "1";
    case 2: return "C2";
    case 3: return "C3";
    case 4: return exponent == 4 ? "C4" : "C2xC2";
    case 6: return abelian ? "C6" : "S3";
    case 8: return "D8";
    case 12: return center == 2 ? "S3xC2" : "A4";
    case 24: return "S4";
    default: return "order" + std::to_string(n) + (abelian ? "ab" : "") + "exp" + std::to_string(exponent);
  }
}

std::vector<SubgroupClass> subgroup_classes_prime_to_5() {
  const int n = static_cast<int>(elements().size());
  std::set<std::string> seen;  // canonical bitset strings
  std::vector<SubgroupClass> out;
  auto conj_canonical = [&](const Subgroup& s) {
    std::string best;
    for (Elt x = 0; x < n; ++x) {
      Subgroup c;
      for (Elt g : members(s)) c.set(mul(mul(x, g), inv(x)));
      auto str = c.to_string();
      if (best.empty() || str < best) best = str;
    }
    return best;
  };
  std::set<std::string> subgroups;
  for (Elt a = 0; a < n; ++a)
    for (Elt b = a; b < n; ++b) {
      Subgroup s = generate({a, b});
      if (s.count() % 5 == 0) continue;
      auto key = s.to_string();
      if (!subgroups.insert(key).second) continue;
      auto c = conj_canonical(s);
      if (!seen.insert(c).second) continue;
      out.push_back({isomorphism_label(s), s.count(), s});
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.order != y.order ? x.order < y.order : x.label < y.label;
  });
  return out;
}

std::vector<std::string> subgroups_prime_to_5() {
  std::vector<std::string> out;
  for (const auto& c : subgroup_classes_prime_to_5())
    if (std::find(out.begin(), out.end(), c.label) == out.end()) out.push_back(c.label);
  return out;
}

std::vector<Elt> s3xc2_generators() {
  return {index_of({1, 2, 2, 0}), index_of({4, 2, 1, 1}), index_of({3, 2, 2, 2})};
}

}  // namespace modcong::adj

namespace modcong::adj {

std::vector<Claim> run_suite() {
  const std::vector<Vec> V2{{3, 1, 0}, {3, 0, 1}}, V1{{4, 1, 1}};
  auto gens = s3xc2_generators();
  Subgroup H = generate(gens);
  Subgroup C6 = stabilizer_in(H, {4, 1, 1});
  Subgroup all;
  all.set();
  std::vector<Claim> out;
  out.push_back({"S3xC2 generators give a group of order 12", H.count() == 12 && isomorphism_label(H) == "S3xC2"});
  out.push_back({"M2^0(F5) = <(3,1,0),(3,0,1)> + <(4,1,1)> is S3xC2-stable", invariant_decomposition_check(gens, V1, V2)});
  out.push_back({"stabilizer of (4,1,1) in S3xC2 has order 6", C6.count() == 6});
  out.push_back({"S3xC2 acts nontrivially on <(4,1,1)>", !acts_trivially(H, V1)});
  out.push_back({"(C3xC2) x| V2 normal in (S3xC2) x| M2^0(F5)", semidirect_normal(C6, V2, H)});
  bool iff = true;
  for (Elt a : members(H))
    for (Elt b : members(H)) {
      Subgroup K = generate({a, b});
      if (normality_check(K, V1, V2) != acts_trivially(K, V1)) iff = false;
    }
  out.push_back({"K x| V2 normal in K x| M2^0(F5) iff K fixes V1, all K in S3xC2", iff});
  const std::vector<std::string> expect{"1", "C2", "C2xC2", "C3", "C4", "C6", "S3", "D8", "S3xC2", "A4", "S4"};
  auto labels = subgroups_prime_to_5();
  auto sorted_labels = labels, sorted_expect = expect;
  std::sort(sorted_labels.begin(), sorted_labels.end());
  std::sort(sorted_expect.begin(), sorted_expect.end());
  out.push_back({"subgroups of order prime to 5: 11 isomorphism types", sorted_labels == sorted_expect});
  out.push_back({"PGL2(F5) acts irreducibly on M2^0(F5)", elements().size() == 120 && invariant_subspaces(members(all)).empty()});
  return out;
}

}  // namespace modcong::adj
