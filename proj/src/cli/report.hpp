#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgap/matrix.hpp"

namespace pgap::cli {

using json = nlohmann::ordered_json;

// Non-finite values have no JSON spelling; they become null.
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json vec(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

// 12 significant digits for the text report.
inline std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_vector(const Vector& v);
std::string join(const std::vector<std::string>& parts, const char* sep = " ");

// Renders a report object as indented `key: value` text.
std::string render_text(const json& report);

}  // namespace pgap::cli
