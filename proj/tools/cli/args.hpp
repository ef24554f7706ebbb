#pragma once

#include <string>
#include <vector>

#include "hsclab/metric.hpp"
#include "hsclab/warp.hpp"

namespace hsclab::cli {

/// One complex number: "0.5", "0.5:0.1", "0.5+0.1i", "-2i", "i".
[[nodiscard]] cplx parse_complex(const std::string& token);

/// Complex vector of length n. Tokens containing ':' or 'i' are one
/// coordinate each (plain numbers are real). A list of plain numbers is read
/// as re,im pairs when it has 2n entries and as real coordinates when it has n.
[[nodiscard]] CVec parse_point(const std::string& text, int n);

/// "1,2,3" or "geom:lo:hi:count" (log-spaced, both ends included).
[[nodiscard]] std::vector<double> parse_list(const std::string& text);

/// "disk:R" or "rect:re0:re1:im0:im1" for every coordinate, or one such
/// item per coordinate separated by ';'.
[[nodiscard]] ChartBox parse_box(const std::string& text, int n);

/// Exactly one of `catalog_name` and `file` must be set.
[[nodiscard]] MetricSpec resolve_metric(const std::string& catalog_name, const std::string& file);
/// Fixture names: warp_demo, example1, product, coupled.
[[nodiscard]] FibrationSpec resolve_fibration(const std::string& fixture, const std::string& file);

}  // namespace hsclab::cli
