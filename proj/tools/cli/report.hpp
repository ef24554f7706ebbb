#pragma once

#include <json.hpp>
#include <string>

#include "hsclab/curvature.hpp"
#include "hsclab/lemma.hpp"
#include "hsclab/positivity.hpp"
#include "hsclab/warp.hpp"

namespace hsclab::cli {

using nlohmann::json;

/// {"schema": 1, "tool", "version", "command", "seed", "config"}
[[nodiscard]] json envelope(const std::string& command, std::uint64_t seed, json config);

[[nodiscard]] json to_json(cplx z);  // [re, im]
[[nodiscard]] json to_json(const CVec& v);
[[nodiscard]] json to_json(const Matrix& m);
[[nodiscard]] json to_json(const CurvatureTensor& R);  // nested n^4 array of [re, im]
[[nodiscard]] json to_json(const ScanReport& r, bool samples);
[[nodiscard]] json to_json(const NegativeWitness& w);
[[nodiscard]] json to_json(const Lemma1Constants& c);
[[nodiscard]] json to_json(const IneqReport& r);
[[nodiscard]] json to_json(const HypothesisReport& r);
[[nodiscard]] json to_json(const BoundReport& r);
[[nodiscard]] json to_json(const ThresholdResult& r);
[[nodiscard]] json to_json(const DecayReport& r);
[[nodiscard]] json to_json(const LambdaSearchResult& r);
[[nodiscard]] json to_json(const Mu0Result& r);
[[nodiscard]] json to_json(const AsymptoticsReport& r);
[[nodiscard]] json to_json(const GrowthReport& r);
[[nodiscard]] json to_json(const Example1Report& r);
[[nodiscard]] json pairs_json(const std::vector<std::pair<double, double>>& xy);

/// Shortest round-trip decimal.
[[nodiscard]] std::string csv_num(double v);

/// Writes `text` (plus newline) to `path`, or stdout when empty.
void emit(const std::string& text, const std::string& path);

}  // namespace hsclab::cli
