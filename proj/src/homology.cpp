#include "orbitcensus/homology.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

void require_same_dimension(const HomologyClass& a, const HomologyClass& b) {
  if (a.dimension() != b.dimension()) {
    throw DomainError("homology dimension mismatch: " + std::to_string(a.dimension()) + " vs " +
                      std::to_string(b.dimension()));
  }
}

HomologyClass& HomologyClass::operator+=(const HomologyClass& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

HomologyClass& HomologyClass::operator-=(const HomologyClass& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

HomologyClass operator-(HomologyClass a) {
  for (auto& c : a.coords_) c = -c;
  return a;
}

std::string HomologyClass::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(coords_[i]);
  }
  return out;
}

std::size_t HomologyHash::operator()(const HomologyClass& c) const noexcept {
  // FNV-1a over the coordinates
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : c.coords()) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

HomologyClass integer_part(std::span<const double> rho) {
  std::vector<std::int64_t> out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!std::isfinite(rho[i])) throw DomainError("integer_part: non-finite coordinate");
    const double f = std::floor(rho[i]);
    if (std::abs(f) > 9.0e18) throw DomainError("integer_part: coordinate exceeds the integer range");
    out[i] = static_cast<std::int64_t>(f);
  }
  return HomologyClass(std::move(out));
}

HomologyClass parse_homology(const std::string& text) {
  std::vector<std::int64_t> coords;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(";,", pos);
    if (end == std::string::npos) end = text.size();
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    if (first != last && *first == '+') ++first;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
      throw UsageError("cannot parse homology class '" + text + "'");
    }
    coords.push_back(value);
    pos = end + 1;
  }
  return HomologyClass(std::move(coords));
}

}  // namespace orbitcensus
