#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "modcong/ellcurve.hpp"

namespace modcong {

// The 17a1 / p = 5 / q = 113 computation end to end.
struct ExampleOptions {
  std::uint64_t p = 5;
  int n = 2;
  std::uint64_t aux_bound = 200;
  std::uint64_t q = 113;
  std::optional<ApTable> table;  // default: counted to 400
  bool witness = true;
  std::function<void(const std::string&)> progress;
};

struct StageResult {
  std::string name;
  bool pass = false;
  nlohmann::json result;
  std::string error;
  double seconds = 0.0;
};

struct ExampleReport {
  std::vector<StageResult> stages;
  bool verdict = false;
};

const WeierstrassCurve& curve_17a1();

ExampleReport run_verify_paper_example(const ExampleOptions& opts = {});

// Stage payloads and verdicts only; timings go to a separate "timing" object.
nlohmann::json to_json(const ExampleReport& r, bool with_timing = true);

}  // namespace modcong
