#include "modcong/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace modcong::io {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field \"") + key + "\" has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

std::uint64_t prime_key(const std::string& k) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(k, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != k.size() || !is_prime(v)) throw InputError("key \"" + k + "\" is not a prime");
  return v;
}

std::map<std::uint64_t, std::int64_t> prime_map(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be an object");
  std::map<std::uint64_t, std::int64_t> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + "[" + k + "] must be an integer");
    out[prime_key(k)] = v.get<std::int64_t>();
  }
  return out;
}

ReductionKind reduction_kind_from(const std::string& s) {
  for (auto k : {ReductionKind::Good, ReductionKind::SplitMultiplicative, ReductionKind::NonsplitMultiplicative,
                 ReductionKind::Additive})
    if (to_string(k) == s) return k;
  throw InputError("unknown reduction kind \"" + s + "\"");
}

ResidueMatrix matrix_from(const json& j, const PrimePowerModulus& mod, const char* what) {
  if (!j.is_array() || j.size() != 2) throw InputError(std::string(what) + " must be a 2x2 array");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != 2) throw InputError(std::string(what) + " must be a 2x2 array");
    std::vector<std::int64_t> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw InputError(std::string(what) + " entries must be integers");
      row.push_back(x.get<std::int64_t>());
    }
    rows.push_back(row);
  }
  return ResidueMatrix::from_rows(rows, mod);
}

json matrix_json(const ResidueMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    out.push_back(row);
  }
  return out;
}

json values_json(const std::array<std::int64_t, 4>& a) { return json::array({{a[0], a[1]}, {a[2], a[3]}}); }

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // count lines up to the failing byte
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

WeierstrassCurve curve_from_json(const json& j) {
  auto a = get<std::vector<std::int64_t>>(j, "a_invariants");
  if (a.size() != 5) throw InputError("a_invariants must have five entries");
  WeierstrassCurve e;
  std::copy(a.begin(), a.end(), e.a.begin());
  e.label = get_or<std::string>(j, "label", "");
  if (j.contains("conductor")) e.conductor = get<std::uint64_t>(j, "conductor");
  validate_curve(e);
  return e;
}

json to_json(const WeierstrassCurve& e) {
  json j{{"a_invariants", e.a}, {"label", e.label}};
  if (e.conductor) j["conductor"] = *e.conductor;
  return j;
}

ApTable aptable_from_json(const json& j) {
  if (!j.is_object()) throw InputError("a_l table must be an object");
  ApTable t;
  t.source = ApTable::Source::Ingested;
  json primes = json::object();
  for (const auto& [k, v] : j.items())
    if (k != "bad_primes" && k != "bound") primes[k] = v;
  t.ap = prime_map(primes, "a_l table");
  if (j.contains("bad_primes")) {
    const auto& b = j.at("bad_primes");
    if (!b.is_object()) throw InputError("bad_primes must be an object");
    for (const auto& [k, v] : b.items()) {
      if (!v.is_string()) throw InputError("bad_primes[" + k + "] must be a string");
      t.bad_primes[prime_key(k)] = reduction_kind_from(v.get<std::string>());
    }
  }
  for (const auto& [l, a] : t.ap) {
    if (t.bad_primes.count(l)) continue;
    if (static_cast<double>(a) * static_cast<double>(a) > 4.0 * static_cast<double>(l))
      throw InputError("Hasse bound violated at " + std::to_string(l) + ": a_" + std::to_string(l) + " = " +
                       std::to_string(a));
  }
  t.bound = get_or<std::uint64_t>(j, "bound", t.ap.empty() ? 0 : t.ap.rbegin()->first);
  return t;
}

json to_json(const ApTable& t) {
  json j = json::object();
  for (const auto& [l, a] : t.ap) j[std::to_string(l)] = a;
  json bad = json::object();
  for (const auto& [l, k] : t.bad_primes) bad[std::to_string(l)] = to_string(k);
  j["bad_primes"] = bad;
  j["bound"] = t.bound;
  return j;
}

Newform newform_from_json(const json& j) {
  Newform f;
  f.level = get<std::uint64_t>(j, "level");
  f.weight = get_or<int>(j, "weight", 2);
  if (f.level == 0) throw InputError("level must be positive");
  if (j.contains("ap")) f.ap = prime_map(j.at("ap"), "ap");
  if (j.contains("bad")) f.bad = prime_map(j.at("bad"), "bad");
  for (const auto& [l, a] : f.ap)
    if (static_cast<double>(a) * static_cast<double>(a) > 4.0 * static_cast<double>(l))
      throw InputError("Hasse bound violated at " + std::to_string(l));
  return f;
}

json to_json(const Newform& f) {
  json ap = json::object(), bad = json::object();
  for (const auto& [l, a] : f.ap) ap[std::to_string(l)] = a;
  for (const auto& [l, a] : f.bad) bad[std::to_string(l)] = a;
  return {{"level", f.level}, {"weight", f.weight}, {"ap", ap}, {"bad", bad}};
}

json to_json(const WitnessReport& r) {
  return {{"joint_dim", r.joint_dim},     {"old_dim", r.old_dim},
          {"new_witness", r.new_witness}, {"modulus", r.modulus},
          {"joint_length", r.joint_length}, {"old_length", r.old_length},
          {"level", r.level},             {"sturm", r.sturm},
          {"constraints", r.constraint_count}, {"verified", r.verified},
          {"new_part_dim", r.new_part_dim}};
}

IntegralLocalType integral_type_from_json(const json& j) {
  auto type = get<std::string>(j, "type");
  IntegralLocalType t;
  if (type == "principal_series")
    t = integral::PrincipalSeries{get_or<bool>(j, "phi_ramified", true), get_or<int>(j, "lattice_exponent", 0)};
  else if (type == "steinberg")
    t = integral::Steinberg{get_or<int>(j, "lattice_exponent", 0)};
  else if (type == "induced")
    t = integral::Induced{get_or<bool>(j, "M_ramified", false), get_or<bool>(j, "descends_mod_p", false)};
  else
    throw InputError("unknown integral type \"" + type + "\"");
  validate(t);
  return t;
}

json to_json(const IntegralLocalType& t) {
  if (auto* x = std::get_if<integral::PrincipalSeries>(&t))
    return {{"type", "principal_series"}, {"phi_ramified", x->phi_ramified}, {"lattice_exponent", x->lattice_exponent}};
  if (auto* x = std::get_if<integral::Steinberg>(&t)) return {{"type", "steinberg"}, {"lattice_exponent", x->lattice_exponent}};
  const auto& x = std::get<integral::Induced>(t);
  return {{"type", "induced"}, {"M_ramified", x.M_ramified}, {"descends_mod_p", x.descends_mod_p}};
}

json to_json(const ResidualLocalType& t) {
  if (auto* x = std::get_if<residual::PrincipalSeries>(&t))
    return {{"type", "principal_series"}, {"phi_ramified", x->phi_ramified}};
  if (std::holds_alternative<residual::UnramifiedTwistLine>(t)) return {{"type", "unramified_twist_line"}};
  if (std::holds_alternative<residual::Steinberg>(t)) return {{"type", "steinberg"}};
  if (auto* x = std::get_if<residual::Induced>(&t)) return {{"type", "induced"}, {"M_ramified", x->M_ramified}};
  return {{"type", "unramified_frob"}, {"shape", to_string(std::get<residual::UnramifiedFrob>(t).shape)}};
}

TameLocalData tame_data_from_json(const json& j) {
  PrimePowerModulus mod(get<std::uint64_t>(j, "p"), get_or<int>(j, "n", 1));
  return {get<std::uint64_t>(j, "l"), matrix_from(j.at("sigma"), mod, "sigma"),
          matrix_from(j.contains("tau") ? j.at("tau") : json::array({{1, 0}, {0, 1}}), mod, "tau")};
}

json to_json(const TameLocalData& d) {
  return {{"l", d.l()}, {"p", d.modulus().p()}, {"n", d.modulus().n()}, {"sigma", matrix_json(d.sigma())},
          {"tau", matrix_json(d.tau())}};
}

LocalCase local_case_from_json(const json& j) {
  LocalCase c;
  auto kind = get<std::string>(j, "kind");
  bool found = false;
  for (auto k : {LocalKind::RamifiedPrincipalSeries, LocalKind::Steinberg, LocalKind::Induced,
                 LocalKind::UnramifiedScalar, LocalKind::UnramifiedRegular, LocalKind::UnramifiedUnipotent})
    if (to_string(k) == kind) {
      c.kind = k;
      found = true;
    }
  if (!found) throw InputError("unknown kind \"" + kind + "\"");
  if (j.contains("ell_class")) {
    auto e = get<std::string>(j, "ell_class");
    if (e == "1") c.ell = EllClass::One;
    else if (e == "-1") c.ell = EllClass::MinusOne;
    else if (e == "other") c.ell = EllClass::Other;
    else throw InputError("ell_class must be \"1\", \"-1\" or \"other\"");
  } else {
    c.ell = ell_class(get<std::uint64_t>(j, "l"), get<std::uint64_t>(j, "p"));
  }
  c.ell_is_ratio = get_or<bool>(j, "ell_is_ratio", false);
  c.M_ramified = get_or<bool>(j, "M_ramified", false);
  validate(c);
  return c;
}

json to_json(const LocalCase& c) {
  return {{"kind", to_string(c.kind)}, {"ell_class", to_string(c.ell)}, {"ell_is_ratio", c.ell_is_ratio},
          {"M_ramified", c.M_ramified}};
}

json to_json(const DimTriple& d) { return {{"d0", d.d0}, {"d1", d.d1}, {"d2", d.d2}}; }

json to_json(const CocycleGen& g) {
  json j{{"name", g.name}};
  if (g.symbolic) {
    j["symbolic"] = true;
  } else {
    j["sigma"] = values_json(g.sigma);
    j["tau"] = values_json(g.tau);
  }
  return j;
}

json to_json(const PlanEntry& e) {
  json j{{"status", to_string(e.status)}};
  if (e.status == PlanEntry::Status::Planned) {
    j["case"] = to_json(e.local);
    j["dims"] = to_json(e.dims);
    j["family"] = {{"sigma", e.family.sigma}, {"tau", e.family.tau}, {"single_member", e.family.single_member}};
    json basis = json::array();
    for (const auto& g : e.N_basis) basis.push_back(to_json(g));
    j["N_basis"] = basis;
  }
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

json to_json(const AuxPrimeCertificate& c) {
  return {{"q", c.q},
          {"sign", c.sign},
          {"p", c.p},
          {"n", c.n},
          {"a_q", c.a_q},
          {"checks", {{"q_mod_p", c.q_mod_p}, {"congruence", c.congruence}, {"coprime_to_Np", c.coprime_to_Np}}}};
}

json to_json(const BigImageReport& r) {
  auto opt = [](const std::optional<std::uint64_t>& x) { return x ? json(*x) : json(nullptr); };
  return {{"verdict", to_string(r.verdict)},
          {"irreducible_witness", opt(r.irreducible_witness)},
          {"split_witness", opt(r.split_witness)},
          {"trace_witness", opt(r.trace_witness)},
          {"deepest_prime", r.deepest_prime}};
}

}  // namespace modcong::io
