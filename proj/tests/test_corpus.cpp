#include "combsub/corpus.hpp"
#include "combsub/decide.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace combsub;

TEST_CASE("every named example loads and validates") {
  for (const std::string& name : example_names()) {
    CAPTURE(name);
    const NamedExample ex = example(name);
    CHECK(ex.name.rfind(name, 0) == 0);
    REQUIRE(ex.substitution);
    CHECK(validate(*ex.substitution).empty());
  }
  CHECK_THROWS_AS(example("nope"), UnknownExample);
  CHECK_THROWS_AS(example("overlapfar(x)"), UnknownExample);
}

TEST_CASE("tags follow the examples' properties") {
  CHECK(example("tshape").has_tag("domino-complete"));
  CHECK(example("inconsistent").has_tag("inconsistent"));
  CHECK(example("mini").has_tag("restricted-complete"));
  CHECK_FALSE(example("jp").has_tag("overlapping"));
  CHECK(overlapfar(2).has_tag("overlapping"));
}

TEST_CASE("stored JP image matches apply") {
  const NamedExample jp = example("jp");
  const Pattern& p = jp.pattern("P");
  CHECK(apply(*jp.substitution, p, *p.cell_at(make_vector({0, 0}))) == jp.pattern("image"));
  CHECK_THROWS(jp.pattern("missing"));
}

TEST_CASE("overlapfar family") {
  CHECK(example("overlapfar").substitution == overlapfar(2).substitution);
  CHECK(example("overlapfar(4)").substitution == overlapfar(4).substitution);
  const NamedExample three = overlapfar(3);
  const Pattern& p = three.pattern("P_3");
  CHECK(p.size() == 6);
  CHECK(p.cell_at(make_vector({3, 0}))->type == "1");
  CHECK(p.cell_at(make_vector({0, 0}))->type == "2");
  CHECK(is_domino_complete(*three.substitution).complete);
  CHECK(overlapfar(0).patterns.empty());
}

TEST_CASE("surface squares are 28 distinct 2x2 blocks") {
  const auto squares = surf_squares();
  REQUIRE(squares.size() == 28);
  std::set<std::string> seen;
  for (const Pattern& q : squares) seen.insert(format_square(square_of(q)));
  CHECK(seen.size() == 28);
  const auto names = fixture_names();
  CHECK(std::find(names.begin(), names.end(), "surf") != names.end());
  CHECK_FALSE(fixture_text("uniform1").empty());
}

TEST_CASE("generated rectangles only use allowed squares") {
  const auto squares = surf_squares();
  std::set<std::string> allowed;
  for (const Pattern& q : squares) allowed.insert(format_square(square_of(q)));
  const auto rects = generate_surface_rectangles(5, 4, 10, 99);
  REQUIRE_FALSE(rects.empty());
  for (const Rectangle& r : rects) {
    CHECK(r.types.size() == 20);
    for (std::size_t x = 0; x + 1 < r.width; ++x)
      for (std::size_t y = 0; y + 1 < r.height; ++y) {
        const Square q{r.at(x, y), r.at(x + 1, y), r.at(x, y + 1), r.at(x + 1, y + 1)};
        CHECK(allowed.count(format_square(q)) == 1);
      }
  }
  const auto again = generate_surface_rectangles(5, 4, 10, 99);
  REQUIRE(again.size() == rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) CHECK(again[i].types == rects[i].types);
}

TEST_CASE("samples are covered subpatterns of their rectangle") {
  const Substitution mini = *example("mini").substitution;
  const auto rects = generate_surface_rectangles(6, 6, 3, 5);
  REQUIRE_FALSE(rects.empty());
  const Pattern whole = rects[0].to_pattern();
  CHECK(whole.size() == 36);
  for (const Pattern& p : sample_covered_subpatterns(rects[0], mini, 20, 1)) {
    CHECK(is_covered(mini, p));
    for (const Cell& c : p) CHECK(whole.contains(c));
  }
}
