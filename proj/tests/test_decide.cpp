#include "combsub/corpus.hpp"
#include "combsub/decide.hpp"
#include "combsub/io.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <tuple>

using namespace combsub;
using combsub::testing::Rng;
using combsub::testing::RuleMode;

namespace {

Cell cell(Scalar x, Scalar y, const Symbol& t) { return Cell{make_vector({x, y}), t}; }

Scalar maxnorm(const Vector2& v) { return v.cwiseAbs().maxCoeff(); }

// Solutions inside the box, ranked by (max-norm, x, y).
std::optional<Vector2> scan_least(const Vector2& a, const Vector2& b, const Vector2& w, Scalar box,
                                  bool positive_only) {
  std::optional<Vector2> best;
  auto key = [](const Vector2& v) { return std::make_tuple(maxnorm(v), v(0), v(1)); };
  for (Scalar x = -box; x <= box; ++x) {
    for (Scalar y = -box; y <= box; ++y) {
      const Vector2 p(x, y);
      if (x * a + y * b != w) continue;
      if (positive_only && !(x > 0 || (x == 0 && y > 0))) continue;
      if (!best || key(p) < key(*best)) best = p;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("squares round-trip through patterns") {
  const Square q{"1", "2", "3", "4"};
  const Pattern p = to_pattern(q, Vector2(3, -1));
  CHECK(p.size() == 4);
  CHECK(p.cell_at(make_vector({4, 0}))->type == "4");
  CHECK(square_of(p) == q);
  CHECK(format_square(q) == "(1,2;3,4)");
  CHECK(dominoes_of(q).size() == 4);
  CHECK(all_squares({"a", "b", "c"}).size() == 81);
  CHECK_THROWS_AS(square_of(Pattern({cell(0, 0, "1"), cell(1, 0, "1"), cell(0, 1, "1")})), MalformedSquare);
}

TEST_CASE("domino completeness reports the missing dominoes") {
  CHECK(is_domino_complete(*example("tshape").substitution).complete);
  const DominoReport r = is_domino_complete(*example("inconsistent").substitution);
  CHECK_FALSE(r.complete);
  // Present: h(1,1), v(2,1), h(2,2). Missing: 8 - 3.
  CHECK(r.missing.size() == 5);
  CHECK_THROWS_AS(check_consistency_domino_complete(*example("jp").substitution), PreconditionError);
}

TEST_CASE("restricted completeness lists extra patterns") {
  const Substitution mini = *example("mini").substitution;
  auto squares = surf_squares();
  CHECK(is_restricted_domino_complete(mini, squares).complete);
  // With one square most rule dominoes are unaccounted for.
  const RestrictedReport one = is_restricted_domino_complete(mini, {squares.front()});
  CHECK_FALSE(one.complete);
  CHECK_FALSE(one.extra.empty());
  CHECK_THROWS_AS(is_restricted_domino_complete(mini, {Pattern({cell(0, 0, "1")})}), MalformedSquare);
}

TEST_CASE("square sweep finds the inconsistent square") {
  const NamedExample ex = example("inconsistent");
  // Complete the rules so the sweep applies, keeping the bad square.
  std::vector<ConcatenationRule> rules = ex.substitution->rules();
  rules.push_back({"1", "2", make_vector({1, 0}), make_vector({1, 0})});
  rules.push_back({"2", "1", make_vector({1, 0}), make_vector({1, 0})});
  rules.push_back({"1", "1", make_vector({0, 1}), make_vector({0, 1})});
  rules.push_back({"1", "2", make_vector({0, 1}), make_vector({0, 1})});
  rules.push_back({"2", "2", make_vector({0, 1}), make_vector({0, 1})});
  const Substitution s(ex.substitution->alphabet(), ex.substitution->base(), rules);
  const SquareVerdict v = check_consistency_domino_complete(s);
  REQUIRE_FALSE(v.consistent);
  REQUIRE(v.witness);
  auto direct = square_loop_vector(s, *v.witness);
  REQUIRE(direct);
  CHECK(same_vector(*direct, v.image_vector));
  CHECK(same_vector(image_vector(s, *v.loop), v.image_vector));
}

TEST_CASE("solver particular solution is the least by max-norm then position") {
  Rng rng(11);
  auto r = [&](Scalar b) { return combsub::testing::uniform(rng, -b, b); };
  int lines = 0;
  for (int i = 0; i < 300; ++i) {
    const Vector2 g(r(3), r(3));
    const Vector2 a = r(3) * g, b = r(3) * g;
    const Vector2 w = r(4) * g;
    const auto set = solve_lattice_equation<Scalar>(a, b, w);
    if (set.kind != SolutionKind::line) continue;
    ++lines;
    CHECK(set.particular(0) * a + set.particular(1) * b == w);
    CHECK(set.direction(0) * a + set.direction(1) * b == Vector2::Zero());
    const auto best = scan_least(a, b, w, 20, false);
    REQUIRE(best);
    CHECK(*best == set.particular);

    const auto pos = least_positive_solution(set);
    const auto pos_scan = scan_least(a, b, w, 20, true);
    if (pos_scan && maxnorm(*pos_scan) < 20) {
      REQUIRE(pos);
      CHECK(*pos == *pos_scan);
    } else if (pos) {
      CHECK(maxnorm(*pos) >= 20);
    }
  }
  CHECK(lines > 50);
}

TEST_CASE("least positive solution for unique and plane cases") {
  auto unique = solve_lattice_equation<Scalar>(Vector2(1, 0), Vector2(0, 1), Vector2(-2, 5));
  CHECK_FALSE(least_positive_solution(unique));
  unique = solve_lattice_equation<Scalar>(Vector2(1, 0), Vector2(0, 1), Vector2(0, 5));
  CHECK(least_positive_solution(unique) == std::optional<Vector2>(Vector2(0, 5)));
  const auto plane = solve_lattice_equation<Scalar>(Vector2::Zero(), Vector2::Zero(), Vector2::Zero());
  CHECK(plane.kind == SolutionKind::plane);
  CHECK(least_positive_solution(plane) == std::optional<Vector2>(Vector2(0, 1)));
}

TEST_CASE("structure recovers every rule of a consistent substitution") {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const Substitution s = combsub::testing::random_domino_complete(rng, 3, RuleMode::structured);
    const StructureData sd = extract_structure(s);
    CHECK(sd.t0 == s.alphabet().front());
    CHECK(sd.v.at(sd.t0).isZero());
    for (const auto& rule : s.rules())
      CHECK(same_vector(structure_vector(sd, rule.t, rule.t_prime, Vector2(rule.u(0), rule.u(1))), rule.v));
  }
  // A perturbed rule breaks some square before any rule can disagree.
  const Substitution bad = combsub::testing::random_domino_complete(rng, 2, RuleMode::perturbed);
  CHECK_THROWS_AS(extract_structure(bad), PreconditionError);
}

TEST_CASE("global overlap decision agrees with rectangles and witnesses") {
  Rng rng(2024);
  int overlapping = 0, clean = 0;
  for (int i = 0; i < 50; ++i) {
    const Substitution s = combsub::testing::random_domino_complete(rng, 2, RuleMode::structured);
    const OverlapDecision d = decide_overlap(s);
    if (const auto* w = std::get_if<OverlapWitness>(&d)) {
      ++overlapping;
      const Pattern p = witness_pattern(extract_structure(s), *w);
      REQUIRE(is_covered(s, p));
      CHECK(std::holds_alternative<Overlapping>(check_nonoverlapping_on(s, p)));
    } else {
      ++clean;
      for (std::size_t wd = 1; wd <= 6; ++wd)
        for (std::size_t ht = 1; ht <= 6; ++ht) {
          const Pattern p = combsub::testing::random_rectangle(rng, s.alphabet(), wd, ht).to_pattern();
          CHECK(std::holds_alternative<NonOverlapping>(check_nonoverlapping_on(s, p)));
        }
    }
  }
  CHECK(overlapping > 0);
  CHECK(clean > 0);
}

TEST_CASE("overlap witness for the sigma family sits at distance n") {
  for (int n = 1; n <= 4; ++n) {
    const Substitution s = *overlapfar(n).substitution;
    const auto w = std::get<OverlapWitness>(decide_overlap(s));
    CHECK(maxnorm(w.xy) == n);
  }
}

TEST_CASE("plane-only procedures reject other dimensions") {
  Substitution::BaseRule base;
  base.emplace("1", Pattern({Cell{make_vector({0, 0, 0}), "1"}}));
  const Substitution s({"1"}, base, {});
  CHECK_THROWS_AS(check_consistency_domino_complete(s), PreconditionError);
  CHECK_THROWS_AS(decide_overlap(s), PreconditionError);
}
