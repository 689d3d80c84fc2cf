#include "orbitcensus/box.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

bool Box::empty() const noexcept {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) return true;
  }
  return false;
}

bool Box::contains(const std::vector<double>& x) const noexcept {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

Box Box::whole_space(std::size_t k) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Box{std::vector<double>(k, -inf), std::vector<double>(k, inf)};
}

namespace {

double parse_bound(const std::string& text, const std::string& whole) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || std::isnan(v)) {
    throw UsageError("cannot parse box '" + whole + "'");
  }
  return v;
}

std::string format_bound(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Box Box::parse(const std::string& text) {
  Box box;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(pos, end - pos);
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("box coordinate '" + part + "' must be lo:hi");
    box.lo.push_back(parse_bound(part.substr(0, colon), text));
    box.hi.push_back(parse_bound(part.substr(colon + 1), text));
    pos = end + 1;
  }
  return box;
}

std::string Box::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (i) out += ',';
    out += format_bound(lo[i]) + ':' + format_bound(hi[i]);
  }
  return out;
}

}  // namespace orbitcensus
