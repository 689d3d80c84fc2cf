#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace orbitcensus {

/// Integer homology class in Z^k (torsion is not represented).
class HomologyClass {
 public:
  HomologyClass() = default;
  explicit HomologyClass(std::size_t dimension) : coords_(dimension, 0) {}
  explicit HomologyClass(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  HomologyClass(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  std::size_t dimension() const noexcept { return coords_.size(); }
  std::span<const std::int64_t> coords() const noexcept { return coords_; }

  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }

  HomologyClass& operator+=(const HomologyClass& other);
  HomologyClass& operator-=(const HomologyClass& other);

  friend HomologyClass operator+(HomologyClass a, const HomologyClass& b) { return a += b; }
  friend HomologyClass operator-(HomologyClass a, const HomologyClass& b) { return a -= b; }
  friend HomologyClass operator-(HomologyClass a);

  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
  // Lexicographic on coordinates.
  friend std::strong_ordering operator<=>(const HomologyClass& a, const HomologyClass& b) {
    return a.coords_ <=> b.coords_;
  }

  /// "1" for k = 1, "1;-2" otherwise.
  std::string to_string() const;

 private:
  std::vector<std::int64_t> coords_;
};

struct HomologyHash {
  std::size_t operator()(const HomologyClass& c) const noexcept;
};

/// Throws DomainError when the dimensions differ.
void require_same_dimension(const HomologyClass& a, const HomologyClass& b);

/// Lattice integer part with fundamental domain [0,1)^k, i.e. component-wise floor.
HomologyClass integer_part(std::span<const double> rho);

/// Parses "2", "-1", "1;0" or "1,0".
HomologyClass parse_homology(const std::string& text);

}  // namespace orbitcensus
