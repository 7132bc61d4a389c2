#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcong/ffield.hpp"
#include "modcong/localtypes.hpp"

namespace modcong {

enum class EllClass { One, MinusOne, Other };  // l mod p
EllClass ell_class(std::uint64_t l, std::uint64_t p);

enum class LocalKind {
  RamifiedPrincipalSeries,
  Steinberg,
  Induced,
  UnramifiedScalar,
  UnramifiedRegular,    // Frobenius with distinct eigenvalues of ratio alpha != 1
  UnramifiedUnipotent,
};

struct LocalCase {
  LocalKind kind = LocalKind::UnramifiedScalar;
  EllClass ell = EllClass::Other;
  bool ell_is_ratio = false;  // regular Frobenius: l == alpha or alpha^-1
  bool M_ramified = false;    // Induced
};

struct DimTriple {
  int d0 = 0, d1 = 0, d2 = 0;
  friend bool operator==(const DimTriple&, const DimTriple&) = default;
};

struct DimRow {
  LocalKind kind;
  const char* condition;
  bool (*matches)(const LocalCase&);
  DimTriple dims;
};

// The dimension table, one row per case.
const std::vector<DimRow>& dim_table();

// Throws InputError for inconsistent cases (e.g. a regular Frobenius whose ratio is l == 1).
void validate(const LocalCase& c);
DimTriple dims(const LocalCase& c);

// Case of a residual type at l. For unramified regular Frobenius the
// eigenvalue ratio is needed; pass the tame data it came from.
LocalCase local_case(const ResidualLocalType& t, const TameLocalData& data);

// d0 = dim ker(Ad0(frob) - 1), d2 = dim ker(Ad0(frob) - l) on trace-zero matrices.
std::pair<int, int> dims_unramified_oracle(const FiniteField& F, const FiniteField::Mat2& frob, std::uint64_t l);

// (d0, d1, d2) of arbitrary tame data mod p computed directly: d0 from the joint
// fixed space of Ad0(sigma), Ad0(tau); d2 = dim H^0(Ad0(1)) by Tate duality
// (sigma acting with an extra factor l); d1 = d0 + d2.
DimTriple dims_oracle(const TameLocalData& data);

// Dimensions at an auxiliary prime: (1, 2, 1).
DimTriple aux_case_dims();

// dim H^1(G_5, Ad0)/N_5 for 17a1 at p = 5 (flat deformations), an ingested literature value.
inline constexpr int kFlatQuotientDimAt5 = 1;

std::string to_string(LocalKind k);
std::string to_string(EllClass e);

}  // namespace modcong
