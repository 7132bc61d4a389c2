#include "modcong/cohodim.hpp"

namespace modcong {

namespace {

bool is_one(const LocalCase& c) { return c.ell == EllClass::One; }
bool is_minus_one(const LocalCase& c) { return c.ell == EllClass::MinusOne; }

using K = LocalKind;

const std::vector<DimRow> kTable = {
    {K::RamifiedPrincipalSeries, "l == 1", [](const LocalCase& c) { return is_one(c); }, {1, 2, 1}},
    {K::RamifiedPrincipalSeries, "l != 1", [](const LocalCase& c) { return !is_one(c); }, {1, 1, 0}},
    {K::Steinberg, "l == 1", [](const LocalCase& c) { return is_one(c); }, {1, 2, 1}},
    {K::Steinberg, "l == -1", [](const LocalCase& c) { return is_minus_one(c); }, {0, 1, 1}},
    {K::Steinberg, "l != +-1", [](const LocalCase& c) { return c.ell == EllClass::Other; }, {0, 0, 0}},
    {K::Induced, "l == -1, M unramified", [](const LocalCase& c) { return is_minus_one(c) && !c.M_ramified; }, {0, 1, 1}},
    {K::Induced, "l != -1 or M ramified", [](const LocalCase& c) { return !is_minus_one(c) || c.M_ramified; }, {0, 0, 0}},
    {K::UnramifiedScalar, "l == 1", [](const LocalCase& c) { return is_one(c); }, {3, 6, 3}},
    {K::UnramifiedScalar, "l != 1", [](const LocalCase& c) { return !is_one(c); }, {3, 3, 0}},
    {K::UnramifiedRegular, "l == -1, l == alpha^+-1", [](const LocalCase& c) { return is_minus_one(c) && c.ell_is_ratio; }, {1, 3, 2}},
    {K::UnramifiedRegular, "l == -1, l != alpha^+-1", [](const LocalCase& c) { return is_minus_one(c) && !c.ell_is_ratio; }, {1, 1, 0}},
    {K::UnramifiedRegular, "l != -1, l == alpha^+-1 or 1",
     [](const LocalCase& c) { return !is_minus_one(c) && (c.ell_is_ratio || is_one(c)); }, {1, 2, 1}},
    {K::UnramifiedRegular, "l != -1, l != alpha^+-1, 1",
     [](const LocalCase& c) { return !is_minus_one(c) && !c.ell_is_ratio && !is_one(c); }, {1, 1, 0}},
    {K::UnramifiedUnipotent, "l == 1", [](const LocalCase& c) { return is_one(c); }, {1, 2, 1}},
    {K::UnramifiedUnipotent, "l != 1", [](const LocalCase& c) { return !is_one(c); }, {1, 1, 0}},
};

// Ad0(g) in the basis e01, e10, e00 - e11, columns = images.
std::vector<FiniteField::Elt> ad0(const FiniteField& F, const FiniteField::Mat2& g) {
  const FiniteField::Mat2 basis[3] = {{F.from_int(0), F.from_int(1), F.from_int(0), F.from_int(0)},
                                      {F.from_int(0), F.from_int(0), F.from_int(1), F.from_int(0)},
                                      {F.from_int(1), F.from_int(0), F.from_int(0), F.from_int(-1)}};
  auto gi = F.inverse(g);
  std::vector<FiniteField::Elt> m(9);
  auto half = F.inv(F.from_int(2));
  for (int j = 0; j < 3; ++j) {
    auto x = F.mul(F.mul(g, basis[j]), gi);
    // coordinates of a trace-zero matrix
    m[0 * 3 + j] = x[1];
    m[1 * 3 + j] = x[2];
    m[2 * 3 + j] = F.mul(F.sub(x[0], x[3]), half);
  }
  return m;
}

// stack (A_i - lambda_i I) and return the kernel dimension
int joint_nullity(const FiniteField& F, const std::vector<std::pair<std::vector<FiniteField::Elt>, FiniteField::Elt>>& ops) {
  std::vector<FiniteField::Elt> m;
  for (auto [a, lam] : ops) {
    for (int i = 0; i < 3; ++i) a[i * 3 + i] = F.sub(a[i * 3 + i], lam);
    m.insert(m.end(), a.begin(), a.end());
  }
  return static_cast<int>(F.nullity(m, 3 * ops.size(), 3));
}

FiniteField::Mat2 to_field(const FiniteField& F, const ResidueMatrix& m) {
  return {F.from_int(static_cast<std::int64_t>(m.at(0, 0))), F.from_int(static_cast<std::int64_t>(m.at(0, 1))),
          F.from_int(static_cast<std::int64_t>(m.at(1, 0))), F.from_int(static_cast<std::int64_t>(m.at(1, 1)))};
}

}  // namespace

EllClass ell_class(std::uint64_t l, std::uint64_t p) {
  if (l % p == 0) throw InputError("l must differ from p");
  if (l % p == 1) return EllClass::One;
  if (l % p == p - 1) return EllClass::MinusOne;
  return EllClass::Other;
}

const std::vector<DimRow>& dim_table() { return kTable; }

void validate(const LocalCase& c) {
  if (c.ell_is_ratio && c.kind != K::UnramifiedRegular)
    throw InputError("eigenvalue ratio relation only applies to a regular Frobenius");
  if (c.M_ramified && c.kind != K::Induced) throw InputError("M_ramified only applies to the Induced case");
  if (c.kind == K::UnramifiedRegular && c.ell_is_ratio && c.ell == EllClass::One)
    throw InputError("inconsistent case: the eigenvalue ratio cannot be both l == 1 and != 1");
}

DimTriple dims(const LocalCase& c) {
  validate(c);
  const DimRow* hit = nullptr;
  for (const auto& row : kTable) {
    if (row.kind != c.kind || !row.matches(c)) continue;
    if (hit) throw ArithmeticError("dimension table rows overlap");
    hit = &row;
  }
  if (!hit) throw ArithmeticError("no dimension table row for case");
  return hit->dims;
}

LocalCase local_case(const ResidualLocalType& t, const TameLocalData& data) {
  TameLocalData d = data.modulus().n() == 1 ? data : data.reduce_mod_p();
  const std::uint64_t p = d.modulus().p();
  LocalCase c;
  c.ell = ell_class(d.l(), p);
  auto unramified = [&] {
    const auto& s = d.sigma();
    const std::uint64_t tr = (s.at(0, 0) + s.at(1, 1)) % p;
    const std::uint64_t det = (mulmod(s.at(0, 0), s.at(1, 1), p) + p - mulmod(s.at(0, 1), s.at(1, 0), p)) % p;
    const std::uint64_t disc = (mulmod(tr, tr, p) + p - mulmod(4, det, p)) % p;
    if (s.at(0, 1) == 0 && s.at(1, 0) == 0 && s.at(0, 0) == s.at(1, 1)) {
      c.kind = K::UnramifiedScalar;
    } else if (disc == 0) {
      c.kind = K::UnramifiedUnipotent;
    } else {
      c.kind = K::UnramifiedRegular;
      // eigenvalue ratio r satisfies r + 1/r + 2 = tr^2 / det
      const std::uint64_t l = d.l() % p;
      const std::uint64_t s2 = (l + *invmod(l, p) + 2) % p;
      c.ell_is_ratio = mulmod(s2, det, p) == mulmod(tr, tr, p);
    }
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, residual::PrincipalSeries>) {
          if (x.phi_ramified)
            c.kind = K::RamifiedPrincipalSeries;
          else
            unramified();
        } else if constexpr (std::is_same_v<T, residual::Steinberg>) {
          c.kind = K::Steinberg;
        } else if constexpr (std::is_same_v<T, residual::Induced>) {
          // tame data are always induced from the unramified quadratic extension
          c.kind = K::Induced;
          c.M_ramified = false;
        } else {
          unramified();
        }
      },
      t);
  return c;
}

std::pair<int, int> dims_unramified_oracle(const FiniteField& F, const FiniteField::Mat2& frob, std::uint64_t l) {
  if (F.is_zero(F.det(frob))) throw InputError("Frobenius matrix is singular");
  if (l % F.p() == 0) throw InputError("l must differ from p");
  auto a = ad0(F, frob);
  int d0 = joint_nullity(F, {{a, F.from_int(1)}});
  int d2 = joint_nullity(F, {{a, F.from_int(static_cast<std::int64_t>(l % F.p()))}});
  return {d0, d2};
}

DimTriple dims_oracle(const TameLocalData& data) {
  TameLocalData d = data.modulus().n() == 1 ? data : data.reduce_mod_p();
  FiniteField F(d.modulus().p(), 1);
  auto s = ad0(F, to_field(F, d.sigma()));
  auto t = ad0(F, to_field(F, d.tau()));
  const auto one = F.from_int(1);
  const auto linv = F.inv(F.from_int(static_cast<std::int64_t>(d.l() % F.p())));
  DimTriple r;
  r.d0 = joint_nullity(F, {{s, one}, {t, one}});
  r.d2 = joint_nullity(F, {{s, linv}, {t, one}});
  r.d1 = r.d0 + r.d2;
  return r;
}

DimTriple aux_case_dims() { return {1, 2, 1}; }

std::string to_string(LocalKind k) {
  switch (k) {
    case K::RamifiedPrincipalSeries: return "ramified_principal_series";
    case K::Steinberg: return "steinberg";
    case K::Induced: return "induced";
    case K::UnramifiedScalar: return "unramified_scalar";
    case K::UnramifiedRegular: return "unramified_regular";
    case K::UnramifiedUnipotent: return "unramified_unipotent";
  }
  return "?";
}

std::string to_string(EllClass e) {
  switch (e) {
    case EllClass::One: return "1";
    case EllClass::MinusOne: return "-1";
    case EllClass::Other: return "other";
  }
  return "?";
}

}  // namespace modcong
