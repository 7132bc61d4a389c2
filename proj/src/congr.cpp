#include "modcong/congr.hpp"

#include <chrono>

namespace modcong {

namespace {

std::vector<std::vector<std::uint64_t>> rows_of(const ResidueMatrix& m) {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

// (op - lambda) applied to each vector
std::vector<std::vector<std::uint64_t>> shifted_images(const ModularSymbolSpace<ResidueRing>& S,
                                                       const std::vector<std::vector<std::uint64_t>>& vs,
                                                       const HeckeConstraint& c) {
  const ResidueRing& R = S.ring();
  auto img = S.apply(c.op, vs);
  const auto lam = R.from_int(c.eigenvalue);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) img[i][j] = R.sub(img[i][j], R.mul(lam, vs[i][j]));
  return img;
}

}  // namespace

bool congruent_mod_pn(const std::map<std::uint64_t, std::int64_t>& f, const std::map<std::uint64_t, std::int64_t>& g,
                      const PrimePowerModulus& mod, std::uint64_t sturm, const std::set<std::uint64_t>& excluded) {
  bool ok = true;
  for (auto l : primes_up_to(sturm)) {
    if (excluded.count(l)) continue;
    auto a = f.find(l), b = g.find(l);
    if (a == f.end() || b == g.end())
      throw InputError("insufficient data: missing a_" + std::to_string(l) + (a == f.end() ? " in f" : " in g"));
    if (mod.reduce(a->second) != mod.reduce(b->second)) ok = false;
  }
  return ok;
}

ResidueMatrix restrict_to_kernel(const ResidueMatrix& K, const std::vector<std::vector<std::uint64_t>>& img) {
  const auto& mod = K.modulus();
  const std::size_t d = K.cols();
  if (img.size() != K.rows()) throw ArithmeticError("restrict_to_kernel: one image per row expected");
  if (K.rows() == 0) return K;
  const std::size_t w = img.front().size();
  // coefficient vectors x with sum_i x_i img_i = 0
  ResidueMatrix Wt(w, K.rows(), mod);
  for (std::size_t i = 0; i < K.rows(); ++i)
    for (std::size_t j = 0; j < w; ++j) Wt.at(j, i) = img[i][j];
  ResidueMatrix X = howell_kernel(Wt);
  ResidueMatrix combo(X.rows(), d, mod);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    auto out = combo.row(r);
    for (std::size_t i = 0; i < K.rows(); ++i) {
      std::uint64_t x = X.at(r, i);
      if (x == 0) continue;
      auto row = K.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        if (row[j] == 0) continue;
        std::uint64_t s = out[j] + mulmod(x, row[j], mod.value());
        out[j] = s >= mod.value() ? s - mod.value() : s;
      }
    }
  }
  return howell_form(combo);
}

ResidueMatrix new_part(const ModularSymbolSpace<ResidueRing>& S, const ResidueMatrix& K) {
  const std::uint64_t N = S.level();
  std::vector<std::vector<std::uint64_t>> img(K.rows());
  for (auto r : prime_factors(N)) {
    ModularSymbolSpace<ResidueRing> lower(N / r, S.ring());
    for (std::uint64_t t : {std::uint64_t{1}, r}) {
      auto gen = lowering_images(S, lower, t);
      for (std::size_t i = 0; i < K.rows(); ++i) {
        std::vector<std::uint64_t> v(K.row(i).begin(), K.row(i).end());
        auto w = apply_generator_images(S.ring(), gen, v, lower.ambient_dim());
        img[i].insert(img[i].end(), w.begin(), w.end());
      }
    }
  }
  return restrict_to_kernel(K, img);
}

ResidueMatrix eigensystem_kernel(const ModularSymbolSpace<ResidueRing>& S, const ResidueMatrix& start,
                                 const std::vector<HeckeConstraint>& constraints,
                                 const std::function<void(const std::string&)>& progress) {
  if (start.cols() != S.ambient_dim()) throw ArithmeticError("eigensystem_kernel: start module has wrong width");
  ResidueMatrix K = howell_form(start);
  for (const auto& c : constraints) {
    if (K.rows() == 0) break;
    K = restrict_to_kernel(K, shifted_images(S, rows_of(K), c));
    if (progress)
      progress(c.op.name() + " = " + std::to_string(c.eigenvalue) + ": generators " + std::to_string(K.rows()) +
               ", free rank " + std::to_string(free_rank(K)));
  }
  return K;
}

bool verify_kernel(const ModularSymbolSpace<ResidueRing>& S, const ResidueMatrix& module,
                   const std::vector<HeckeConstraint>& constraints) {
  auto basis = rows_of(module);
  if (basis.empty()) return true;
  for (const auto& c : constraints) {
    for (const auto& v : shifted_images(S, basis, c)) {
      for (auto x : v)
        if (x != 0) return false;
    }
  }
  return true;
}

std::vector<HeckeConstraint> witness_constraints(const Newform& f, std::uint64_t q, int eps, std::uint64_t bound) {
  const std::uint64_t N = f.level * q;
  std::vector<HeckeConstraint> cs;
  for (auto l : primes_up_to(bound)) {
    if (N % l == 0) continue;
    auto it = f.ap.find(l);
    if (it == f.ap.end()) throw InputError("insufficient a_l data: missing a_" + std::to_string(l));
    cs.push_back({HeckeLabel::T(l), it->second});
  }
  for (auto r : prime_factors(f.level)) {
    auto it = f.bad.find(r);
    if (it == f.bad.end()) throw InputError("insufficient data: missing U_" + std::to_string(r) + " eigenvalue");
    cs.push_back({HeckeLabel::U(r), it->second});
  }
  cs.push_back({HeckeLabel::U(q), eps});
  return cs;
}

WitnessReport level_raising_witness(const Newform& f, std::uint64_t q, int eps, const PrimePowerModulus& mod,
                                    const WitnessOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (f.weight != 2) throw InputError("only weight 2 is supported");
  if (eps != 1 && eps != -1) throw InputError("sign must be +1 or -1");
  if (!is_prime(q)) throw InputError("q must be prime");
  if (f.level == 0 || f.level % q == 0) throw InputError("q must not divide the level");
  const std::uint64_t N = f.level * q;
  if (N > opts.max_level) throw ResourceBoundExceeded("level " + std::to_string(N) + " exceeds max_level");

  WitnessReport rep;
  rep.level = N;
  rep.modulus = mod.to_string();
  rep.sturm = sturm_bound(N);
  auto cs = witness_constraints(f, q, eps, rep.sturm);
  rep.constraint_count = cs.size();
  auto say = [&](const std::string& s) {
    if (opts.progress) opts.progress(s);
  };

  ResidueRing R(mod);
  say("building level " + std::to_string(N) + " modular symbols over Z/" + mod.to_string());
  ModularSymbolSpace<ResidueRing> big(N, R);
  say("ambient " + std::to_string(big.ambient_dim()) + ", cuspidal " + std::to_string(big.cuspidal_dim()));
  ResidueMatrix cusp(0, big.ambient_dim(), mod);
  for (const auto& r : big.cuspidal_basis().rows()) cusp.append_row(r);
  ResidueMatrix K = eigensystem_kernel(big, cusp, cs, opts.progress);

  ModularSymbolSpace<ResidueRing> small(f.level, R);
  ResidueMatrix old(0, big.ambient_dim(), mod);
  for (std::uint64_t t : {std::uint64_t{1}, q}) {
    auto imgs = degeneracy_images(small, big, t);
    for (const auto& b : small.cuspidal_basis().rows())
      old.append_row(apply_generator_images(R, imgs, b, big.ambient_dim()));
  }
  say("old image from level " + std::to_string(f.level) + ": " + std::to_string(old.rows()) + " vectors");
  ResidueMatrix Kold = eigensystem_kernel(big, old, cs, opts.progress);

  rep.joint_dim = free_rank(K);
  rep.old_dim = free_rank(Kold);
  rep.joint_length = module_length(K);
  rep.old_length = module_length(Kold);
  rep.new_witness = rep.joint_dim > rep.old_dim;
  say("level-lowering maps on the joint kernel");
  rep.new_part_dim = free_rank(new_part(big, K));
  rep.verified = verify_kernel(big, K, cs) && verify_kernel(big, Kold, cs);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace modcong
