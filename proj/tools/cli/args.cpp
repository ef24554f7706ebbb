#include "args.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>

#include "hsclab/error.hpp"

namespace hsclab::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
  }
  return v;
}

bool is_plain_number(const std::string& s) {
  return s.find(':') == std::string::npos && s.find('i') == std::string::npos;
}

}  // namespace

cplx parse_complex(const std::string& token) {
  if (token.empty()) throw Error(ErrorCode::InvalidArgument, "empty complex number");
  if (const auto colon = token.find(':'); colon != std::string::npos) {
    return {parse_real(token.substr(0, colon)), parse_real(token.substr(colon + 1))};
  }
  if (token.back() != 'i') return {parse_real(token), 0.0};
  const std::string body = token.substr(0, token.size() - 1);
  // Split before the last sign that is not part of an exponent.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (cut == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, cut)), imag_part(body.substr(cut))};
}

CVec parse_point(const std::string& text, int n) {
  const auto tokens = split(text, ',');
  const bool plain = std::all_of(tokens.begin(), tokens.end(), is_plain_number);
  CVec out;
  if (plain && static_cast<int>(tokens.size()) == 2 * n) {
    for (std::size_t k = 0; k < tokens.size(); k += 2) out.emplace_back(parse_real(tokens[k]), parse_real(tokens[k + 1]));
  } else {
    for (const auto& t : tokens) out.push_back(parse_complex(t));
  }
  if (static_cast<int>(out.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(n) + " complex coordinates in '" + text + "'");
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  if (text.rfind("geom:", 0) == 0) {
    const auto parts = split(text.substr(5), ':');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "geom range is geom:lo:hi:count");
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    const int count = static_cast<int>(parse_real(parts[2]));
    if (!(lo > 0.0) || !(hi >= lo) || count < 2) throw Error(ErrorCode::InvalidArgument, "bad geom range");
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
    return out;
  }
  std::vector<double> out;
  for (const auto& t : split(text, ',')) out.push_back(parse_real(t));
  return out;
}

ChartBox parse_box(const std::string& text, int n) {
  auto one = [](const std::string& item) {
    const auto parts = split(item, ':');
    if (parts[0] == "disk" && parts.size() == 2) return CoordDomain::disk(parse_real(parts[1]));
    if (parts[0] == "rect" && parts.size() == 5) {
      const CoordDomain d = CoordDomain::rect(parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3]),
                                              parse_real(parts[4]));
      if (!(d.re_min <= d.re_max && d.im_min <= d.im_max)) {
        throw Error(ErrorCode::InvalidArgument, "box interval has min > max");
      }
      return d;
    }
    throw Error(ErrorCode::InvalidArgument, "box item must be disk:R or rect:a:b:c:d, got '" + item + "'");
  };
  const auto items = split(text, ';');
  ChartBox box;
  if (items.size() == 1) {
    box.coords.assign(static_cast<std::size_t>(n), one(items[0]));
  } else if (static_cast<int>(items.size()) == n) {
    for (const auto& it : items) box.coords.push_back(one(it));
  } else {
    throw Error(ErrorCode::InvalidArgument, "box needs one item or one per coordinate");
  }
  return box;
}

MetricSpec resolve_metric(const std::string& catalog_name, const std::string& file) {
  if (catalog_name.empty() == file.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --catalog and --metric");
  }
  return file.empty() ? catalog(catalog_name) : load_metric_file(file);
}

FibrationSpec resolve_fibration(const std::string& fixture, const std::string& file) {
  if (!file.empty()) return load_fibration_file(file);
  if (fixture == "warp_demo") return warp_demo_fibration();
  if (fixture == "example1") return example1_fibration();
  if (fixture == "product") return product_fibration();
  if (fixture == "coupled") return coupled_fibration();
  throw Error(ErrorCode::UnknownName, "unknown fibration fixture '" + fixture + "'");
}

}  // namespace hsclab::cli
