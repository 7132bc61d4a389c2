#include "modcong/example.hpp"

#include <chrono>

#include "modcong/adjgroup.hpp"
#include "modcong/io.hpp"

namespace modcong {

const WeierstrassCurve& curve_17a1() {
  static const WeierstrassCurve e{{1, -1, 1, -1, -14}, "17a1", 17};
  return e;
}

ExampleReport run_verify_paper_example(const ExampleOptions& o) {
  using nlohmann::json;
  ExampleReport rep;
  const std::uint64_t N = 17;
  std::uint64_t pn = 1;
  for (int i = 0; i < o.n; ++i) pn *= o.p;
  ApTable table = o.table ? *o.table : ap_table(curve_17a1(), 400);

  auto stage = [&](const std::string& name, const std::function<bool(json&)>& body) {
    if (o.progress) o.progress(name);
    StageResult s;
    s.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      s.pass = body(s.result);
    } catch (const std::exception& e) {
      s.pass = false;
      s.error = e.what();
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.stages.push_back(std::move(s));
  };

  stage("big_image", [&](json& r) {
    auto b = big_image_verdict(table, N, o.p);
    r = io::to_json(b);
    return b.verdict == ImageVerdict::ContainsSL2;
  });

  stage("auxiliary_search", [&](json& r) {
    auto certs = search_auxiliary(table, o.p, o.n, o.aux_bound, N);
    r = json::array();
    bool found = false;
    for (const auto& c : certs) {
      r.push_back(io::to_json(c));
      if (c.q == o.q && c.sign == -1) found = true;
    }
    return found;
  });

  stage("frobenius_order", [&](json& r) {
    auto it = table.ap.find(o.q);
    if (it == table.ap.end()) throw InputError("insufficient data: " + std::to_string(o.q));
    auto [o1, on] = frob_order_pair(o.q, it->second, o.p, o.n);
    r = {{"q", o.q}, {"a_q", it->second}, {"order_mod_p", o1}, {"order_mod_pn", on}};
    return o1 == 4 && on == 4 * (pn / o.p);
  });

  stage("modulus_bound", [&](json& r) {
    auto b = modulus_exponent_bound(true, 20, 5);
    r = {{"divides_p", true}, {"e", 20}, {"p", 5}, {"bound", b}};
    return b == 26;
  });

  stage("adjoint_group", [&](json& r) {
    r = json::array();
    bool all = true;
    for (const auto& c : adj::run_suite()) {
      r.push_back({{"claim", c.name}, {"pass", c.pass}});
      all = all && c.pass;
    }
    return all;
  });

  if (o.witness)
    stage("level_raising_witness", [&](json& r) {
      Newform f;
      f.level = N;
      for (const auto& [l, a] : table.ap) (l == N ? f.bad[l] : f.ap[l]) = a;
      WitnessOptions wo;
      wo.progress = o.progress;
      auto w = level_raising_witness(f, o.q, -1, PrimePowerModulus(o.p, o.n), wo);
      r = io::to_json(w);
      return w.new_witness;
    });

  rep.verdict = true;
  for (const auto& s : rep.stages) rep.verdict = rep.verdict && s.pass;
  return rep;
}

nlohmann::json to_json(const ExampleReport& r, bool with_timing) {
  using nlohmann::json;
  json stages = json::array(), timing = json::object();
  for (const auto& s : r.stages) {
    json j{{"stage", s.name}, {"pass", s.pass}, {"result", s.result}};
    if (!s.error.empty()) j["error"] = s.error;
    stages.push_back(j);
    timing[s.name] = s.seconds;
  }
  json out{{"command", "verify-paper-example"}, {"stages", stages}, {"verdict", r.verdict}};
  if (with_timing) out["timing"] = timing;
  return out;
}

}  // namespace modcong
