// modcong: command-line driver. Every verb prints one JSON document (or a text
// rendering of it) and exits 0 on success, 1 on a failed verification, 2 on bad
// input, 3 when a resource bound is hit.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "modcong/adjgroup.hpp"
#include "modcong/example.hpp"
#include "modcong/io.hpp"
#include "modcong/modsym.hpp"

using namespace modcong;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t p = 5;
  int n = 2;
  std::uint64_t bound = 0;
  std::uint64_t level = 0;
  std::vector<std::string> in;
  std::string curve;
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
};

void render_text(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& j, const Common& c) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw InputError("cannot write " + c.out);
    os = &file;
  }
  if (c.format == "json")
    *os << j.dump(2) << "\n";
  else
    render_text(j, "", *os);
}

const std::string& single_input(const Common& c) {
  if (c.in.size() != 1) throw InputError("expected exactly one --in file");
  return c.in.front();
}

WeierstrassCurve load_curve(const Common& c) {
  if (c.curve.empty()) return curve_17a1();
  return io::curve_from_json(io::read_json_file(c.curve));
}

// --in table.json if given, else counted from --curve (default 17a1)
ApTable load_table(const Common& c, std::uint64_t bound) {
  if (!c.in.empty()) return io::aptable_from_json(io::read_json_file(single_input(c)));
  return ap_table(load_curve(c), std::max<std::uint64_t>(bound, 2), c.jobs);
}

std::uint64_t curve_level(const Common& c, const WeierstrassCurve& e) {
  if (c.level) return c.level;
  auto N = conductor_of(e);
  if (!N) throw InputError("conductor unknown: pass --level");
  return *N;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruences between modular forms modulo prime powers"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool pn = true) {
    if (pn) {
      s->add_option("--p", c.p, "prime p >= 5")->check(CLI::Range(5, 1000000));
      s->add_option("--n", c.n, "exponent n >= 1")->check(CLI::Range(1, 40));
    }
    s->add_option("--out", c.out, "write the report here");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 64));
  };

  auto* classify = app.add_subcommand("classify", "classify tame local data mod p, or list the reductions of an integral type");
  classify->add_option("--in", c.in, "TameLocalData or integral type JSON")->required();
  std::uint64_t l = 0;
  classify->add_option("--l", l, "l for an integral type");
  bool unram = false;
  classify->add_flag("--unramified-coefficients", unram, "apply the unramified-coefficient constraint");
  common(classify);

  auto* dimsc = app.add_subcommand("dims", "local cohomology dimensions of a LocalCase");
  dimsc->add_option("--in", c.in, "LocalCase JSON")->required();
  common(dimsc, false);

  auto* plan = app.add_subcommand("plan", "C_l / N_l plan for a LocalCase");
  plan->add_option("--in", c.in, "LocalCase JSON");
  plan->add_option("--l", l, "the prime l (l == p gives the delegated marker)");
  common(plan);

  auto* aux = app.add_subcommand("aux-search", "auxiliary primes q != +-1 mod p with a_q == +-(q+1) mod p^n");
  aux->add_option("--bound", c.bound, "search q <= bound")->required();
  aux->add_option("--curve", c.curve, "curve JSON (default 17a1)");
  aux->add_option("--in", c.in, "a_l table JSON instead of a curve");
  aux->add_option("--level", c.level, "level N (default: the conductor)");
  common(aux);

  auto* cong = app.add_subcommand("congruence", "a_l(f) == a_l(g) mod p^n up to the Sturm bound");
  cong->add_option("--in", c.in, "two a_l table JSON files")->required()->expected(2);
  cong->add_option("--level", c.level, "level for the Sturm bound");
  cong->add_option("--bound", c.bound, "explicit bound (overrides --level)");
  common(cong);

  auto* raise = app.add_subcommand("raise-witness", "joint eigensystem kernel at level M q mod p^n");
  std::uint64_t q = 113;
  int eps = -1;
  std::uint64_t max_level = 20000;
  raise->add_option("--q", q, "auxiliary prime");
  raise->add_option("--eps", eps, "U_q eigenvalue sign")->check(CLI::IsMember({-1, 1}));
  raise->add_option("--curve", c.curve, "curve JSON (default 17a1)");
  raise->add_option("--in", c.in, "newform JSON instead of a curve");
  raise->add_option("--max-level", max_level, "refuse larger levels");
  common(raise);

  auto* adjv = app.add_subcommand("adjgroup-verify", "PGL2(F5) acting on trace-zero matrices");
  common(adjv, false);

  auto* paper = app.add_subcommand("verify-paper-example", "17a1, p = 5, q = 113 end to end");
  bool no_witness = false;
  paper->add_option("--in", c.in, "a_l table JSON replacing the counted one");
  paper->add_option("--bound", c.bound, "auxiliary search bound (default 200)");
  paper->add_flag("--no-witness", no_witness, "skip the level-raising stage");
  common(paper);

  auto* apt = app.add_subcommand("ap-table", "count a_l for a curve");
  apt->add_option("--curve", c.curve, "curve JSON (default 17a1)");
  apt->add_option("--bound", c.bound, "primes <= bound")->required();
  common(apt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) {
      auto j = io::read_json_file(single_input(c));
      if (j.contains("type")) {
        auto t = io::integral_type_from_json(j);
        if (!l) throw InputError("--l is required for an integral type");
        auto set = unram ? integral_reduction_constraint(t, true, l, c.p) : allowed_reductions(t, l, c.p);
        json r = json::array();
        for (auto x : set) r.push_back(to_string(x));
        emit({{"type", io::to_json(t)}, {"l", l}, {"p", c.p}, {"allowed_reductions", r}}, c);
      } else {
        auto d = io::tame_data_from_json(j);
        auto res = classify_residual(d.reduce_mod_p());
        json out{{"data", io::to_json(d)}, {"residual_type", io::to_json(res)}};
        try {
          auto lc = local_case(res, d.reduce_mod_p());
          out["case"] = io::to_json(lc);
          out["dims"] = io::to_json(dims(lc));
        } catch (const InputError& e) {
          out["case"] = nullptr;
          out["case_note"] = e.what();
        }
        emit(out, c);
      }
    } else if (*dimsc) {
      auto lc = io::local_case_from_json(io::read_json_file(single_input(c)));
      json out{{"case", io::to_json(lc)}, {"dims", io::to_json(dims(lc))}};
      for (const auto& row : dim_table())
        if (row.kind == lc.kind && row.matches(lc)) out["row"] = row.condition;
      emit(out, c);
    } else if (*plan) {
      if (l && l == c.p) {
        emit(io::to_json(plan_at_p()), c);
      } else {
        auto lc = io::local_case_from_json(io::read_json_file(single_input(c)));
        emit(io::to_json(plan_for(lc)), c);
      }
    } else if (*aux) {
      std::uint64_t N = c.level;
      if (!N) {
        if (!c.in.empty()) throw InputError("--level is required with a table");
        N = curve_level(c, load_curve(c));
      }
      auto table = load_table(c, c.bound);
      json out = json::array();
      for (const auto& cert : search_auxiliary(table, c.p, c.n, c.bound, N)) out.push_back(io::to_json(cert));
      emit(out, c);
    } else if (*cong) {
      auto f = io::aptable_from_json(io::read_json_file(c.in[0]));
      auto g = io::aptable_from_json(io::read_json_file(c.in[1]));
      std::uint64_t sturm = c.bound;
      if (!sturm) {
        if (!c.level) throw InputError("pass --level or --bound");
        sturm = sturm_bound(c.level);
      }
      std::set<std::uint64_t> excluded;
      for (const auto& [p, k] : f.bad_primes) excluded.insert(p);
      for (const auto& [p, k] : g.bad_primes) excluded.insert(p);
      PrimePowerModulus mod(c.p, c.n);
      bool ok = congruent_mod_pn(f.ap, g.ap, mod, sturm, excluded);
      json ex = json::array();
      for (auto p : excluded) ex.push_back(p);
      emit({{"congruent", ok}, {"modulus", mod.to_string()}, {"sturm", sturm}, {"excluded", ex}}, c);
      return ok ? 0 : 1;
    } else if (*raise) {
      Newform f;
      if (!c.in.empty()) {
        f = io::newform_from_json(io::read_json_file(single_input(c)));
      } else {
        auto e = load_curve(c);
        f.level = curve_level(c, e);
        auto t = ap_table(e, sturm_bound(f.level * q) + 1, c.jobs);
        for (const auto& [p, a] : t.ap) (f.level % p == 0 ? f.bad[p] : f.ap[p]) = a;
      }
      WitnessOptions o;
      o.max_level = max_level;
      o.progress = [](const std::string& s) { std::cerr << s << "\n"; };
      auto r = level_raising_witness(f, q, eps, PrimePowerModulus(c.p, c.n), o);
      json out = io::to_json(r);
      out["timing"] = {{"seconds", r.seconds}};
      emit(out, c);
      return r.new_witness ? 0 : 1;
    } else if (*adjv) {
      json out = json::array();
      bool all = true;
      for (const auto& claim : adj::run_suite()) {
        out.push_back({{"claim", claim.name}, {"pass", claim.pass}});
        all = all && claim.pass;
      }
      emit({{"claims", out}, {"verdict", all}}, c);
      return all ? 0 : 1;
    } else if (*paper) {
      ExampleOptions o;
      o.p = c.p;
      o.n = c.n;
      if (c.bound) o.aux_bound = c.bound;
      if (!c.in.empty()) o.table = io::aptable_from_json(io::read_json_file(single_input(c)));
      o.witness = !no_witness;
      o.progress = [](const std::string& s) { std::cerr << s << "\n"; };
      auto r = run_verify_paper_example(o);
      emit(to_json(r), c);
      return r.verdict ? 0 : 1;
    } else if (*apt) {
      emit(io::to_json(ap_table(load_curve(c), c.bound, c.jobs)), c);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ArithmeticError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceBoundExceeded& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
