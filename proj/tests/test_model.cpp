#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitcensus/box.hpp"
#include "orbitcensus/errors.hpp"
#include "orbitcensus/homology.hpp"
#include "orbitcensus/model.hpp"
#include "orbitcensus/model_io.hpp"

using namespace orbitcensus;

namespace {

MarkovFlowModel golden() { return bouquet_model(1, {{1.0, {1}}, {oracle::kPhi, {-1}}}); }

}  // namespace

TEST_CASE("homology arithmetic and ordering") {
  HomologyClass a{1, -2}, b{3, 4};
  CHECK((a + b) == HomologyClass{4, 2});
  CHECK((b - a) == HomologyClass{2, 6});
  CHECK((-a) == HomologyClass{-1, 2});
  CHECK(a < b);
  CHECK(a.to_string() == "1;-2");
  CHECK_THROWS_AS(a + HomologyClass{1}, DomainError);
  CHECK_THROWS_AS(require_same_dimension(a, HomologyClass(3)), DomainError);
}

TEST_CASE("integer part is the component-wise floor") {
  CHECK(integer_part(std::vector<double>{0.0}) == HomologyClass{0});
  CHECK(integer_part(std::vector<double>{1.9, -0.3}) == HomologyClass{1, -1});
  CHECK(integer_part(std::vector<double>{-2.0}) == HomologyClass{-2});
  CHECK_THROWS_AS(integer_part(std::vector<double>{std::nan("")}), DomainError);
  CHECK_THROWS_AS(integer_part(std::vector<double>{std::numeric_limits<double>::infinity()}), DomainError);
}

TEST_CASE("integer part leaves a remainder in the unit cell") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x{u(rng), u(rng), u(rng)};
    const HomologyClass n = integer_part(x);
    for (std::size_t j = 0; j < 3; ++j) {
      const double r = x[j] - static_cast<double>(n[j]);
      CHECK(r >= 0.0);
      CHECK(r < 1.0);
    }
  }
}

TEST_CASE("homology parsing") {
  CHECK(parse_homology("2") == HomologyClass{2});
  CHECK(parse_homology("-1") == HomologyClass{-1});
  CHECK(parse_homology("1;0") == HomologyClass{1, 0});
  CHECK(parse_homology("1,-3") == HomologyClass{1, -3});
  CHECK_THROWS_AS(parse_homology(""), UsageError);
  CHECK_THROWS_AS(parse_homology("1;x"), UsageError);
  CHECK_THROWS_AS(parse_homology("1.5"), UsageError);
}

TEST_CASE("box parsing and membership") {
  const Box b = Box::parse("-1:1,0:inf");
  CHECK(b.dimension() == 2);
  CHECK(b.contains({0.5, 100.0}));
  CHECK(b.contains({-1.0, 0.0}));
  CHECK_FALSE(b.contains({0.5, -0.1}));
  CHECK_FALSE(b.empty());
  CHECK(Box::parse("1:0").empty());
  CHECK(Box::whole_space(3).contains({1e300, -1e300, 0}));
  CHECK(Box::parse(b.to_string()).lo == b.lo);
  CHECK(Box::parse(b.to_string()).hi == b.hi);
  CHECK_THROWS_AS(Box::parse("1"), UsageError);
}

TEST_CASE("validation examples") {
  const ValidationReport g = validate_model(golden());
  CHECK(g.strongly_connected);
  CHECK_FALSE(g.lattice_warning);
  CHECK(g.k == 1);
  CHECK(g.edge_count == 2);

  CHECK(validate_model(bouquet_model(1, {{1.0, {1}}, {2.0, {-1}}})).lattice_warning);

  const MarkovFlowModel oneway(1, {"u", "v"}, {{0, 1, 1.0, {1}}, {0, 1, 2.0, {0}}});
  CHECK_FALSE(validate_model(oneway).strongly_connected);
  CHECK_THROWS_AS(require_strongly_connected(oneway), ModelError);
}

TEST_CASE("lattice warning looks at cycle lengths") {
  // two-vertex graph whose individual edge lengths are irrational but every cycle has integer length
  const MarkovFlowModel m(1, {"u", "v"},
                          {{0, 1, std::sqrt(2.0), {1}}, {1, 0, 1.0 - std::sqrt(2.0) + 1.0, {0}}, {0, 0, 1.0, {-1}}});
  CHECK(validate_model(m).lattice_warning);
  CHECK(looks_rational(0.75));
  CHECK_FALSE(looks_rational(oracle::kPhi));
  CHECK_FALSE(looks_rational(std::sqrt(2.0)));
}

TEST_CASE("model construction errors") {
  CHECK_THROWS_AS(MarkovFlowModel(1, {"o"}, {{0, 0, 1.0, {1}}, {0, 0, 0.0, {1}}}), DomainError);
  CHECK_THROWS_AS(MarkovFlowModel(1, {"o"}, {{0, 0, 1.0, {1}}, {0, 0, -2.0, {1}}}), DomainError);
  CHECK_THROWS_AS(MarkovFlowModel(1, {"o"}, {{0, 0, 1.0, {1}}, {0, 2, 1.0, {1}}}), StructuralError);
  CHECK_THROWS_AS(MarkovFlowModel(1, {"o"}, {{0, 0, 1.0, {1}}, {0, 0, 1.0, {1, 2}}}), StructuralError);
  CHECK_THROWS_AS(MarkovFlowModel(1, {"o", "o"}, {{0, 0, 1.0, {1}}, {1, 1, 1.0, {1}}}), StructuralError);
  CHECK_THROWS_AS(MarkovFlowModel(0, {"o"}, {{0, 0, 1.0, {}}, {0, 0, 1.0, {}}}), StructuralError);
}

TEST_CASE("model file parsing") {
  const char* text = R"({"k": 1, "vertices": ["o"], "edges": [
      {"from": "o", "to": "o", "length": 1, "weight": [1]},
      {"from": "o", "to": "o", "length": 1.6180339887498949, "weight": [-1]}]})";
  const MarkovFlowModel m = parse_model(text);
  CHECK(m.edge_count() == 2);
  CHECK(m.edge(1).length == oracle::kPhi);
  CHECK(m.edge(1).weight == HomologyClass{-1});

  // serialization round trip preserves every bit of every length
  const MarkovFlowModel again = parse_model(serialize_model(m));
  CHECK(serialize_model(again) == serialize_model(m));
  CHECK(model_hash(again) == model_hash(m));

  CHECK_THROWS_AS(parse_model("{"), StructuralError);
  CHECK_THROWS_AS(parse_model(R"({"k":1,"vertices":["o"],"edges":[],"extra":1})"), StructuralError);
  CHECK_THROWS_AS(parse_model(R"({"k":1,"vertices":["o"],"edges":[
      {"from":"o","to":"x","length":1,"weight":[1]},{"from":"o","to":"o","length":1,"weight":[1]}]})"),
                  StructuralError);
  CHECK_THROWS_AS(parse_model(R"({"k":1,"vertices":["o"],"edges":[
      {"from":"o","to":"o","length":0,"weight":[1]},{"from":"o","to":"o","length":1,"weight":[1]}]})"),
                  DomainError);
  CHECK_THROWS_AS(parse_model(R"({"k":1,"vertices":["o"],"edges":[
      {"from":"o","to":"o","length":1,"weight":[1],"colour":2},{"from":"o","to":"o","length":1,"weight":[1]}]})"),
                  StructuralError);
  CHECK_THROWS_AS(parse_model(R"({"k":1,"vertices":["o"],"edges":[
      {"from":"o","to":"o","length":1,"weight":[0.5]},{"from":"o","to":"o","length":1,"weight":[1]}]})"),
                  StructuralError);
}

TEST_CASE("random models round trip through the file format") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const MarkovFlowModel m = oracle::random_model(rng, 1 + i % 3);
    const MarkovFlowModel again = parse_model(serialize_model(m));
    REQUIRE(again.edge_count() == m.edge_count());
    for (std::size_t e = 0; e < m.edge_count(); ++e) {
      CHECK(again.edge(e).length == m.edge(e).length);
      CHECK(again.edge(e).weight == m.edge(e).weight);
      CHECK(again.edge(e).from == m.edge(e).from);
      CHECK(again.edge(e).to == m.edge(e).to);
    }
    CHECK(is_strongly_connected(m));
  }
}
