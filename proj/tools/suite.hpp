#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "siegel3/common.hpp"

namespace s3::suite {

using nlohmann::json;

json cplx_json(cplx z);

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  json detail = json::object();
  double runtime_limit = 0;  // seconds; 0 means unconstrained
};

struct Options {
  std::uint64_t seed = 42;
  unsigned threads = 1;
  // Path of the CLI binary; criterion 14 runs it and is skipped when empty.
  std::string cli_path;
  std::set<int> only;  // empty: all criteria
};

// Called after each criterion with its wall time (never part of the results).
using Reporter = std::function<void(const Criterion&, double seconds)>;

std::vector<Criterion> run(const Options& opt, const Reporter& report = {});

json to_json(const std::vector<Criterion>& results, std::uint64_t seed);

}  // namespace s3::suite
