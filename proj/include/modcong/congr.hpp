#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "modcong/arith.hpp"
#include "modcong/linalg.hpp"
#include "modcong/modsym.hpp"

namespace modcong {

// Hecke data of a weight-2 newform with rational coefficients.
struct Newform {
  std::uint64_t level = 0;
  int weight = 2;
  std::map<std::uint64_t, std::int64_t> ap;   // good primes
  std::map<std::uint64_t, std::int64_t> bad;  // U_r eigenvalues at r | level
};

struct HeckeConstraint {
  HeckeLabel op;
  std::int64_t eigenvalue;
};

// a_l(f) == a_l(g) mod p^n for every prime l <= sturm outside `excluded`.
// A missing coefficient raises InputError naming the prime.
bool congruent_mod_pn(const std::map<std::uint64_t, std::int64_t>& f, const std::map<std::uint64_t, std::int64_t>& g,
                      const PrimePowerModulus& mod, std::uint64_t sturm, const std::set<std::uint64_t>& excluded = {});

// Howell basis (ambient coordinates) of { v in start : op_c v = lambda_c v for all c }.
ResidueMatrix eigensystem_kernel(const ModularSymbolSpace<ResidueRing>& space, const ResidueMatrix& start,
                                 const std::vector<HeckeConstraint>& constraints,
                                 const std::function<void(const std::string&)>& progress = {});

// Howell basis of { v in module : phi(v) = 0 } where phi is given by the images
// of the module rows (concatenated target coordinates).
ResidueMatrix restrict_to_kernel(const ResidueMatrix& module, const std::vector<std::vector<std::uint64_t>>& row_images);

// Part of `module` killed by every level-lowering map out of `space`.
ResidueMatrix new_part(const ModularSymbolSpace<ResidueRing>& space, const ResidueMatrix& module);

// True when every row of `module` satisfies every constraint exactly.
bool verify_kernel(const ModularSymbolSpace<ResidueRing>& space, const ResidueMatrix& module,
                   const std::vector<HeckeConstraint>& constraints);

struct WitnessOptions {
  std::uint64_t max_level = 20000;
  std::function<void(const std::string&)> progress;
};

struct WitnessReport {
  std::size_t joint_dim = 0;     // free rank of the joint kernel
  std::size_t old_dim = 0;       // free rank of its part inside the old image
  bool new_witness = false;      // joint_dim > old_dim
  std::string modulus;           // "p^n"
  std::size_t joint_length = 0;  // log_p of the kernel's order
  std::size_t old_length = 0;
  std::uint64_t level = 0;
  std::uint64_t constraint_count = 0;
  std::uint64_t sturm = 0;
  bool verified = false;  // kernel rows re-checked against every constraint
  // Supplementary: free rank of the joint kernel inside the kernel of all
  // level-lowering maps (to N/r, t in {1, r}, r | N). Not part of new_witness.
  std::size_t new_part_dim = 0;
  double seconds = 0.0;   // kept apart from the deterministic fields
};

// The constraint list used for the level M q computation.
std::vector<HeckeConstraint> witness_constraints(const Newform& f, std::uint64_t q, int eps, std::uint64_t bound);

WitnessReport level_raising_witness(const Newform& f, std::uint64_t q, int eps, const PrimePowerModulus& mod,
                                    const WitnessOptions& opts = {});

}  // namespace modcong
