#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <vector>

namespace modcong::adj {

// PGL2(F5), 120 elements, represented by index into `elements()`.
using Mat = std::array<int, 4>;  // row-major over F5
using Vec = std::array<int, 3>;  // trace-zero coordinates in {(1 0; 0 4), (0 1; 0 0), (0 0; 1 0)}
using Elt = int;
using Subgroup = std::bitset<120>;

// Canonical representatives: first nonzero entry equal to 1.
const std::vector<Mat>& elements();
Mat canonical(const Mat& m);  // throws InputError if singular
Elt index_of(const Mat& m);
Elt identity();
Elt mul(Elt g, Elt h);
Elt inv(Elt g);

// Coordinates of g M g^-1.
Vec adjoint_action(Elt g, const Vec& m);
Vec add(const Vec& a, const Vec& b);
Vec scale(int c, const Vec& a);

Subgroup generate(const std::vector<Elt>& gens);
std::vector<Elt> members(const Subgroup& s);

// Rank over F5 of a list of vectors.
int rank(const std::vector<Vec>& vs);
bool in_span(const std::vector<Vec>& span, const Vec& v);

// Every generator maps V1 and V2 into themselves. Throws InputError unless V1 + V2 = F5^3 directly.
bool invariant_decomposition_check(const std::vector<Elt>& gens, const std::vector<Vec>& V1, const std::vector<Vec>& V2);

Subgroup stabilizer_in(const Subgroup& H, const Vec& m);

// Semidirect product H x| M with (g, m)(h, w) = (g h, m + g.w).
struct SemidirectElement {
  Elt g;
  Vec m;
};
SemidirectElement sd_mul(const SemidirectElement& a, const SemidirectElement& b);
SemidirectElement sd_inv(const SemidirectElement& a);

// Brute force: is H x| V2 normal in H x| (V1 + V2)? V1 must be a line and both spans H-stable.
bool normality_check(const Subgroup& H, const std::vector<Vec>& V1, const std::vector<Vec>& V2);
bool acts_trivially(const Subgroup& H, const std::vector<Vec>& V);

// (inner x| inner_module) normal in (outer x| F5^3), exhaustive conjugation.
bool semidirect_normal(const Subgroup& inner, const std::vector<Vec>& inner_module, const Subgroup& outer);

// Nonzero proper subspaces of F5^3 stable under the whole group generated by gens.
std::vector<std::vector<Vec>> invariant_subspaces(const std::vector<Elt>& gens);

struct SubgroupClass {
  std::string label;
  std::size_t order;
  Subgroup representative;
};
// Conjugacy classes of subgroups of order prime to 5, labelled up to isomorphism.
std::vector<SubgroupClass> subgroup_classes_prime_to_5();
// Distinct isomorphism labels, ascending by order.
std::vector<std::string> subgroups_prime_to_5();
std::string isomorphism_label(const Subgroup& s);

// The order 12 group <(1 2; 2 0), (4 2; 1 1)> x <(3 2; 2 2)>.
std::vector<Elt> s3xc2_generators();

}  // namespace modcong::adj

namespace modcong::adj {

struct Claim {
  std::string name;
  bool pass;
};
// The decomposition, stabilizer, normality, subgroup list and irreducibility claims.
std::vector<Claim> run_suite();

}  // namespace modcong::adj
