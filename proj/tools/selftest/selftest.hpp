#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hsclab/positivity.hpp"

namespace hsclab::selftest {

struct Config {
  std::uint64_t seed = 0;
  /// Scan settings for every sampled-minimum criterion.
  ScanParams scan = default_scan();

  static ScanParams default_scan() {
    ScanParams p;
    p.grid_per_axis = 5;
    p.random_points = 32;
    return p;
  }
};

struct Result {
  std::string id;
  std::string criterion;  // statement with its pinned tolerance
  bool pass = false;
  std::string detail;     // measured values
};

struct Criterion {
  std::string id;
  std::string criterion;
  std::function<Result(const Config&)> run;
};

/// All acceptance criteria in report order.
[[nodiscard]] const std::vector<Criterion>& criteria();

/// Runs the criteria whose id is in `only` (all when empty). Unknown ids
/// throw InvalidArgument. Exceptions inside a criterion turn into a failing
/// result carrying the message.
[[nodiscard]] std::vector<Result> run(const Config& cfg, const std::vector<std::string>& only = {});

/// "PASS  id  criterion  [detail]"
[[nodiscard]] std::string format_line(const Result& r);

/// Seed-stamped JSON report (schema 1); byte-identical for equal inputs.
[[nodiscard]] std::string report_json(const Config& cfg, const std::vector<Result>& results);

}  // namespace hsclab::selftest
