#pragma once

#include <limits>
#include <string>
#include <vector>

namespace orbitcensus {

/// Closed axis-aligned box [lo_1,hi_1] x ... x [lo_k,hi_k]; bounds may be infinite.
/// A box with lo_i > hi_i in any coordinate is empty.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dimension() const noexcept { return lo.size(); }
  bool empty() const noexcept;
  bool contains(const std::vector<double>& x) const noexcept;

  static Box whole_space(std::size_t k);
  /// "lo:hi" per coordinate, coordinates separated by ','; "inf" and "-inf" allowed.
  static Box parse(const std::string& text);
  std::string to_string() const;
};

}  // namespace orbitcensus
