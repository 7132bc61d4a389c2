#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "modcong/auxprimes.hpp"
#include "modcong/cohodim.hpp"
#include "modcong/congr.hpp"
#include "modcong/deformplan.hpp"
#include "modcong/ellcurve.hpp"
#include "modcong/localtypes.hpp"

namespace modcong::io {

using nlohmann::json;

// Parse a file; malformed JSON raises InputError carrying the parser's line/column.
json read_json_file(const std::string& path);
json parse_json(const std::string& text, const std::string& origin = "<input>");

// {"a_invariants": [a1, a2, a3, a4, a6], "label": "...", "conductor": N}
WeierstrassCurve curve_from_json(const json& j);
json to_json(const WeierstrassCurve& e);

// {"2": -2, "3": -1, ..., "bad_primes": {"17": "split"}, "bound": 400}
// Good primes violating the Hasse bound are rejected, naming the prime.
ApTable aptable_from_json(const json& j);
json to_json(const ApTable& t);

// {"level": M, "weight": 2, "ap": {"2": -1, ...}, "bad": {"17": 1}}
Newform newform_from_json(const json& j);
json to_json(const Newform& f);
json to_json(const WitnessReport& r);

// {"type": "steinberg", "lattice_exponent": 0}, {"type": "principal_series", "phi_ramified": true,
// "lattice_exponent": -1}, {"type": "induced", "M_ramified": false, "descends_mod_p": true}
IntegralLocalType integral_type_from_json(const json& j);
json to_json(const IntegralLocalType& t);
json to_json(const ResidualLocalType& t);

// {"l": 31, "p": 5, "n": 1, "sigma": [[a, b], [c, d]], "tau": [[...], [...]]}
TameLocalData tame_data_from_json(const json& j);
json to_json(const TameLocalData& d);

// {"kind": "steinberg", "ell_class": "1" | "-1" | "other", "ell_is_ratio": false, "M_ramified": false}
// or with "l" and "p" in place of "ell_class".
LocalCase local_case_from_json(const json& j);
json to_json(const LocalCase& c);
json to_json(const DimTriple& d);
json to_json(const CocycleGen& g);
json to_json(const PlanEntry& e);
json to_json(const AuxPrimeCertificate& c);
json to_json(const BigImageReport& r);

}  // namespace modcong::io
