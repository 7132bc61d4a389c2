#include "modcong/localtypes.hpp"

#include <numeric>

namespace modcong {

namespace {

using M2 = ResidueMatrix;

std::uint64_t tr(const M2& m) { return (m.at(0, 0) + m.at(1, 1)) % m.modulus().value(); }

std::uint64_t det(const M2& m) {
  const std::uint64_t q = m.modulus().value();
  return (mulmod(m.at(0, 0), m.at(1, 1), q) + q - mulmod(m.at(0, 1), m.at(1, 0), q)) % q;
}

// tr^2 - 4 det
std::uint64_t disc(const M2& m) {
  const std::uint64_t q = m.modulus().value();
  std::uint64_t t = tr(m);
  return (mulmod(t, t, q) + q - mulmod(4 % q, det(m), q)) % q;
}

bool is_scalar(const M2& m) { return m.at(0, 1) == 0 && m.at(1, 0) == 0 && m.at(0, 0) == m.at(1, 1); }

M2 inverse(const M2& m) {
  const auto& mod = m.modulus();
  auto d = invmod(det(m), mod.value());
  if (!d) throw InputError("matrix is not invertible");
  M2 r(2, 2, mod);
  const std::uint64_t q = mod.value();
  r.at(0, 0) = mulmod(m.at(1, 1), *d, q);
  r.at(1, 1) = mulmod(m.at(0, 0), *d, q);
  r.at(0, 1) = mulmod((q - m.at(0, 1)) % q, *d, q);
  r.at(1, 0) = mulmod((q - m.at(1, 0)) % q, *d, q);
  return r;
}

M2 power(M2 b, std::uint64_t e) {
  M2 r = M2::identity(2, b.modulus());
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

M2 reduce_to(const M2& m, const PrimePowerModulus& to) {
  M2 r(2, 2, to);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r.at(i, j) = m.at(i, j) % to.value();
  return r;
}

FrobShape shape_of(const M2& s) {
  if (is_scalar(s)) return FrobShape::Scalar;
  return disc(s) != 0 ? FrobShape::RegularSemisimple : FrobShape::Unipotent;
}

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

// Arithmetic in (Z/p^K)^x, a cyclic group of order p^(K-1)(p-1).
class Units {
 public:
  explicit Units(const PrimePowerModulus& m) : m_(m), q_(m.value()), order_(m.value() / m.p() * (m.p() - 1)) {
    for (std::uint64_t g = 2;; ++g) {
      if (g % m.p() == 0) continue;
      bool ok = true;
      for (auto r : prime_factors(order_))
        if (powmod(g, order_ / r, q_) == 1) ok = false;
      if (ok) {
        gen_ = g;
        break;
      }
    }
  }
  std::uint64_t q() const { return q_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, q_); }
  std::uint64_t pw(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, q_); }
  std::uint64_t inv(std::uint64_t a) const { return *invmod(a, q_); }
  std::uint64_t random_unit(std::mt19937_64& rng) const { return powmod(gen_, rng() % order_, q_); }
  // random x with x^m = 1; with prime_to_p also x^(p-1) = 1
  std::uint64_t random_root(std::uint64_t m, bool prime_to_p, std::mt19937_64& rng) const {
    std::uint64_t g = std::gcd(m, order_);
    if (prime_to_p) g = std::gcd(g, m_.p() - 1);
    return powmod(gen_, (order_ / g) * (rng() % g), q_);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q_ - b % q_) % q_; }

 private:
  PrimePowerModulus m_;
  std::uint64_t q_, order_, gen_ = 0;
};

M2 mat(const PrimePowerModulus& m, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  M2 r(2, 2, m);
  r.at(0, 0) = a % m.value();
  r.at(0, 1) = b % m.value();
  r.at(1, 0) = c % m.value();
  r.at(1, 1) = d % m.value();
  return r;
}

}  // namespace

void validate(const IntegralLocalType& t) {
  std::visit(overloaded{[](const integral::PrincipalSeries& x) {
                          if (x.lattice_exponent > 0) throw InputError("principal series lattice exponent must be <= 0");
                        },
                        [](const integral::Steinberg& x) {
                          if (x.lattice_exponent < 0) throw InputError("Steinberg lattice exponent must be >= 0");
                        },
                        [](const integral::Induced&) {}},
             t);
}

ReductionClass reduction_class(const ResidualLocalType& t) {
  return std::visit(overloaded{[](const residual::PrincipalSeries& x) {
                                 return x.phi_ramified ? ReductionClass::RamifiedPrincipalSeries
                                                       : ReductionClass::UnramifiedPrincipalSeries;
                               },
                               [](const residual::UnramifiedTwistLine&) { return ReductionClass::UnramifiedPrincipalSeries; },
                               [](const residual::Steinberg&) { return ReductionClass::Steinberg; },
                               [](const residual::Induced&) { return ReductionClass::Induced; },
                               [](const residual::UnramifiedFrob&) { return ReductionClass::UnramifiedPrincipalSeries; }},
                    t);
}

std::string to_string(FrobShape s) {
  switch (s) {
    case FrobShape::Scalar: return "scalar";
    case FrobShape::RegularSemisimple: return "regular_semisimple";
    case FrobShape::Unipotent: return "unipotent";
  }
  return "?";
}

std::string to_string(const ResidualLocalType& t) {
  return std::visit(
      overloaded{[](const residual::PrincipalSeries& x) {
                   return std::string("principal_series(") + (x.phi_ramified ? "ramified" : "unramified") + ")";
                 },
                 [](const residual::UnramifiedTwistLine&) { return std::string("unramified_twist_line"); },
                 [](const residual::Steinberg&) { return std::string("steinberg"); },
                 [](const residual::Induced& x) {
                   return std::string("induced(M ") + (x.M_ramified ? "ramified" : "unramified") + ")";
                 },
                 [](const residual::UnramifiedFrob& x) { return "unramified_frob(" + to_string(x.shape) + ")"; }},
      t);
}

std::string to_string(const IntegralLocalType& t) {
  return std::visit(overloaded{[](const integral::PrincipalSeries& x) {
                                 return std::string("principal_series(") + (x.phi_ramified ? "ramified" : "unramified") +
                                        ", n=" + std::to_string(x.lattice_exponent) + ")";
                               },
                               [](const integral::Steinberg& x) {
                                 return "steinberg(n=" + std::to_string(x.lattice_exponent) + ")";
                               },
                               [](const integral::Induced& x) {
                                 return std::string("induced(M ") + (x.M_ramified ? "ramified" : "unramified") +
                                        (x.descends_mod_p ? ", descends mod p" : "") + ")";
                               }},
                    t);
}

std::string to_string(ReductionClass c) {
  switch (c) {
    case ReductionClass::RamifiedPrincipalSeries: return "ramified_principal_series";
    case ReductionClass::UnramifiedPrincipalSeries: return "unramified_principal_series";
    case ReductionClass::Steinberg: return "steinberg";
    case ReductionClass::Induced: return "induced";
  }
  return "?";
}

TameLocalData::TameLocalData(std::uint64_t l, ResidueMatrix sigma, ResidueMatrix tau)
    : l_(l), sigma_(std::move(sigma)), tau_(std::move(tau)) {
  if (!is_prime(l)) throw InputError("l must be prime");
  if (l == 2) throw InputError("l = 2 is not supported");
  if (sigma_.rows() != 2 || sigma_.cols() != 2 || tau_.rows() != 2 || tau_.cols() != 2)
    throw InputError("tame data must be 2x2 matrices");
  if (!(sigma_.modulus() == tau_.modulus())) throw InputError("sigma and tau over different moduli");
  if (l == sigma_.modulus().p()) throw InputError("l must differ from p");
  if (det(sigma_) % sigma_.modulus().p() == 0 || det(tau_) % tau_.modulus().p() == 0)
    throw InputError("tame data must be invertible");
  if (!(sigma_ * tau_ * inverse(sigma_) == power(tau_, l_)))
    throw InputError("inconsistent tame relation: sigma tau sigma^-1 != tau^l");
}

TameLocalData TameLocalData::reduce_mod_p() const {
  auto m = modulus().with_exponent(1);
  return {l_, reduce_to(sigma_, m), reduce_to(tau_, m)};
}

TameLocalData TameLocalData::conjugated(const ResidueMatrix& g) const {
  auto gi = inverse(g);
  return {l_, g * sigma_ * gi, g * tau_ * gi};
}

TameLocalData TameLocalData::twisted(std::int64_t s, std::int64_t t) const {
  const auto& m = modulus();
  return {l_, sigma_.scaled(m.reduce(s)), tau_.scaled(m.reduce(t))};
}

ResidualLocalType classify_residual(const TameLocalData& data) {
  TameLocalData d = data.modulus().n() == 1 ? data : data.reduce_mod_p();
  const M2& s = d.sigma();
  const M2& t = d.tau();
  // everything below is projective, so twists do not matter
  if (is_scalar(t)) return residual::UnramifiedFrob{shape_of(s)};
  if (disc(t) == 0) return residual::Steinberg{};
  // tau regular semisimple: sigma fixes or swaps its eigenlines
  if (s * t == t * s) return residual::PrincipalSeries{true};
  // a swapping sigma has trace 0; projective image Klein four iff tau has trace 0 too,
  // and then the representation is also induced from a ramified extension
  return residual::Induced{tr(t) == 0};
}

ReductionSet allowed_reductions(const IntegralLocalType& t, std::uint64_t l, std::uint64_t p) {
  if (l == p) throw InputError("l must differ from p");
  if (!is_prime(l) || !is_prime(p)) throw InputError("l and p must be prime");
  validate(t);
  const bool one = l % p == 1, minus_one = l % p == p - 1;
  using C = ReductionClass;
  return std::visit(overloaded{[&](const integral::PrincipalSeries& x) {
                                 if (!x.phi_ramified) return ReductionSet{C::UnramifiedPrincipalSeries};
                                 ReductionSet s{C::RamifiedPrincipalSeries};
                                 if (one) s.insert({C::UnramifiedPrincipalSeries, C::Steinberg});
                                 return s;
                               },
                               [&](const integral::Steinberg&) {
                                 return ReductionSet{C::Steinberg, C::UnramifiedPrincipalSeries};
                               },
                               [&](const integral::Induced&) {
                                 ReductionSet s{C::Induced};
                                 if (minus_one) s.insert({C::Steinberg, C::UnramifiedPrincipalSeries});
                                 return s;
                               }},
                    t);
}

ReductionSet integral_reduction_constraint(const IntegralLocalType& t, bool coeffs_unramified, std::uint64_t l,
                                           std::uint64_t p) {
  if (p < 5) throw InputError("p must be at least 5");
  auto s = allowed_reductions(t, l, p);
  if (!coeffs_unramified) return s;
  bool ramified_ss = std::visit(overloaded{[](const integral::PrincipalSeries& x) { return x.phi_ramified; },
                                           [](const integral::Steinberg&) { return false; },
                                           [](const integral::Induced&) { return true; }},
                                t);
  if (ramified_ss) {
    // Steinberg and unramified reductions both have unramified semisimplification
    s.erase(ReductionClass::Steinberg);
    s.erase(ReductionClass::UnramifiedPrincipalSeries);
  }
  return s;
}

std::optional<TameLocalData> realize(const IntegralLocalType& t, std::uint64_t l, const PrimePowerModulus& mod,
                                     std::mt19937_64& rng, bool unramified_coefficients) {
  validate(t);
  const std::uint64_t p = mod.p();
  if (l == p || l == 2 || !is_prime(l)) throw InputError("realize: l must be an odd prime different from p");
  const int extra = std::visit(overloaded{[](const integral::PrincipalSeries& x) { return -x.lattice_exponent; },
                                          [](const integral::Steinberg&) { return 0; },
                                          [](const integral::Induced& x) { return x.descends_mod_p ? 1 : 0; }},
                               t);
  const PrimePowerModulus big = mod.with_exponent(mod.n() + extra);
  const Units U(big);
  const std::uint64_t q = U.q();
  const std::uint64_t pe = big.power(extra);
  auto divp = [&](std::uint64_t v, std::uint64_t d) { return (v / d) % q; };  // exact division of a multiple of d
  const int kTries = 64;

  std::optional<std::pair<M2, M2>> st;  // (sigma, tau) over big
  std::visit(
      overloaded{
          [&](const integral::PrincipalSeries& x) {
            const std::uint64_t d = big.power(-x.lattice_exponent);
            if (!x.phi_ramified && x.lattice_exponent == 0 && rng() % 3 == 0) {
              // (1 psi; 0 1) with psi unramified
              st = {mat(big, 1, rng() % q, 0, 1), M2::identity(2, big)};
              return;
            }
            for (int i = 0; i < kTries && !st; ++i) {
              std::uint64_t fs = (1 + d * (rng() % q)) % q;
              if (fs % p == 0) continue;
              std::uint64_t ft = x.phi_ramified ? U.random_root(l - 1, unramified_coefficients, rng) : 1;
              if (x.phi_ramified && ft == 1) continue;
              if ((ft + q - 1) % d != 0) continue;
              st = {mat(big, fs, divp((fs + q - 1) % q, d), 0, 1), mat(big, ft, divp((ft + q - 1) % q, d), 0, 1)};
            }
          },
          [&](const integral::Steinberg& x) {
            std::uint64_t c = x.lattice_exponent >= big.n() ? 0 : big.power(x.lattice_exponent);
            st = {mat(big, l % q, rng() % q, 0, 1), mat(big, 1, c, 0, 1)};
          },
          [&](const integral::Induced& x) {
            if (x.M_ramified) {
              if (x.descends_mod_p) return;
              for (int i = 0; i < kTries && !st; ++i) {
                std::uint64_t c = U.random_unit(rng);
                if (U.pw(c, (l - 1) / 2) != q - 1) continue;
                if (unramified_coefficients && U.pw(c, 2 * (p - 1)) != 1) continue;
                std::uint64_t s = U.random_unit(rng);
                st = {mat(big, s, 0, 0, q - s), mat(big, 0, c, 1, 0)};
              }
              return;
            }
            for (int i = 0; i < kTries && !st; ++i) {
              std::uint64_t a = U.random_root(l * l - 1, unramified_coefficients, rng);
              std::uint64_t b = U.pw(a, l);
              if (a == b) continue;  // xi would descend
              bool desc = (a + q - b) % p == 0;
              if (desc != x.descends_mod_p) continue;
              if (!desc) {
                st = {mat(big, 0, U.random_unit(rng), 1, 0), mat(big, a, 0, 0, b)};
                continue;
              }
              // lattice spanned by v1 and (v2 - u v1)/p
              std::uint64_t u = U.random_unit(rng);
              std::uint64_t c = (U.mul(u, u) + pe * (rng() % q)) % q;
              M2 tau = mat(big, a, U.mul(u, divp(U.sub(b, a), pe)), 0, b);
              M2 sigma = mat(big, u, divp(U.sub(c, U.mul(u, u)), pe), pe, q - u);
              st = {sigma, tau};
            }
          }},
      t);
  if (!st) return std::nullopt;
  auto [sigma, tau] = *st;
  // twist and conjugate
  sigma = sigma.scaled(U.random_unit(rng));
  tau = tau.scaled(U.random_root(l - 1, unramified_coefficients, rng));
  M2 g(2, 2, big);
  do {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g.at(i, j) = rng() % q;
  } while (det(g) % p == 0);
  M2 gi = inverse(g);
  return TameLocalData(l, reduce_to(g * sigma * gi, mod), reduce_to(g * tau * gi, mod));
}

bool admits(const ReductionSet& allowed, const ResidualLocalType& t) { return allowed.count(reduction_class(t)) > 0; }

bool ramification_loss_possible(std::uint64_t l, std::uint64_t p) {
  if (l == p) throw InputError("l must differ from p");
  if (!is_prime(l) || !is_prime(p)) throw InputError("l and p must be prime");
  return l % p == 1;
}

}  // namespace modcong
