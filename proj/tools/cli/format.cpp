#include "format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <stdexcept>
#include <string>

namespace diracsea::cli {

namespace {

bool parse_plain(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && first != last;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string fmt(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_angle(std::string_view raw) {
  const std::string_view text = trim(raw);
  double value = 0.0;
  if (parse_plain(text, value)) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite number '" + std::string(raw) + "'");
    return value;
  }
  static const std::regex pattern(
      R"(^([+-]?)((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?\*?(pi)?(?:/((?:\d+(?:\.\d*)?|\.\d+)))?$)");
  std::cmatch m;
  const std::string s(text);
  if (!std::regex_match(s.c_str(), m, pattern) || (!m[2].matched && !m[3].matched)) {
    throw std::invalid_argument("cannot parse angle '" + std::string(raw) + "'");
  }
  double result = m[2].matched ? std::stod(m[2].str()) : 1.0;
  if (m[3].matched) result *= std::numbers::pi;
  if (m[4].matched) {
    const double d = std::stod(m[4].str());
    if (d == 0.0) throw std::invalid_argument("division by zero in '" + std::string(raw) + "'");
    result /= d;
  }
  return m[1].str() == "-" ? -result : result;
}

std::vector<double> parse_angle_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_angle(text.substr(start, comma == std::string_view::npos ? text.npos
                                                                                  : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace diracsea::cli
