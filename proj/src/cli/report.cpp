#include "report.hpp"

#include <sstream>

namespace pgap::cli {
namespace {

std::string scalar_text(const json& v) {
  if (v.is_null()) return "inf";
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_object() || e.is_array()) return false;
  return true;
}

void render(const json& v, int depth, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& [key, value] : v.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      render(value, depth + 1, os);
    } else if (is_flat_array(value)) {
      os << pad << key << ": [";
      bool first = true;
      for (const auto& e : value) {
        os << (first ? "" : ", ") << scalar_text(e);
        first = false;
      }
      os << "]\n";
    } else if (value.is_array()) {
      os << pad << key << ":\n";
      for (const auto& e : value) {
        if (e.is_object()) {
          os << pad << "  -\n";
          render(e, depth + 2, os);
        } else {
          os << pad << "  - " << e.dump() << '\n';
        }
      }
    } else {
      os << pad << key << ": " << scalar_text(value) << '\n';
    }
  }
}

}  // namespace

std::string fmt_vector(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string render_text(const json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

}  // namespace pgap::cli
