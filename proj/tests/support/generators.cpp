#include "generators.hpp"

#include <algorithm>
#include <set>

namespace combsub::testing {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<Vector2> random_polyomino(Rng& rng, std::size_t size) {
  std::vector<Vector2> cells{Vector2::Zero()};
  auto has = [&](const Vector2& v) { return std::find(cells.begin(), cells.end(), v) != cells.end(); };
  const Vector2 steps[4] = {Vector2(1, 0), Vector2(0, 1), Vector2(-1, 0), Vector2(0, -1)};
  while (cells.size() < size) {
    const Vector2 from = cells[rng() % cells.size()];
    const Vector2 next = from + steps[rng() % 4];
    if (!has(next)) cells.push_back(next);
  }
  return cells;
}

namespace {

LatticeVector random_vector(Rng& rng, std::int64_t bound) {
  return make_vector({uniform(rng, -bound, bound), uniform(rng, -bound, bound)});
}

std::vector<Symbol> symbols(std::size_t k) {
  std::vector<Symbol> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(std::to_string(i));
  return out;
}

Pattern random_base_image(Rng& rng, const std::vector<Symbol>& alphabet) {
  for (;;) {
    auto shape = random_polyomino(rng, static_cast<std::size_t>(uniform(rng, 1, 4)));
    // Keep supports inside [-3,3]^2.
    if (std::any_of(shape.begin(), shape.end(),
                    [](const Vector2& v) { return v.cwiseAbs().maxCoeff() > 3; }))
      continue;
    std::vector<Cell> cells;
    for (const Vector2& v : shape)
      cells.push_back(Cell{make_vector({v(0), v(1)}), alphabet[rng() % alphabet.size()]});
    return Pattern(std::move(cells));
  }
}

}  // namespace

Substitution random_domino_complete(Rng& rng, std::size_t k, RuleMode mode) {
  const std::vector<Symbol> alphabet = symbols(k);
  Substitution::BaseRule base;
  for (const Symbol& t : alphabet) base.emplace(t, random_base_image(rng, alphabet));

  const LatticeVector alpha = random_vector(rng, 2);
  const LatticeVector beta = random_vector(rng, 2);
  std::map<Symbol, LatticeVector> v;
  for (const Symbol& t : alphabet) v[t] = random_vector(rng, 1);

  std::vector<ConcatenationRule> rules;
  for (const Symbol& t : alphabet) {
    for (const Symbol& u : alphabet) {
      for (const LatticeVector& step : {make_vector({1, 0}), make_vector({0, 1})}) {
        LatticeVector image = mode == RuleMode::random
                                  ? random_vector(rng, 5)
                                  : LatticeVector(step(0) * alpha + step(1) * beta - v[t] + v[u]);
        rules.push_back(ConcatenationRule{t, u, step, image});
      }
    }
  }
  if (mode == RuleMode::perturbed) {
    auto& r = rules[rng() % rules.size()];
    r.v(rng() % 2) += uniform(rng, 0, 1) ? 1 : -1;
  }
  return Substitution(alphabet, std::move(base), std::move(rules));
}

Substitution random_domino_complete(Rng& rng, std::size_t max_k) {
  const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_k)));
  const RuleMode modes[3] = {RuleMode::structured, RuleMode::perturbed, RuleMode::random};
  return random_domino_complete(rng, k, modes[rng() % 3]);
}

Pattern random_filled_pattern(Rng& rng, const std::vector<Symbol>& alphabet, std::size_t max_cells) {
  auto shape = random_polyomino(rng, static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_cells))));
  std::vector<Cell> cells;
  for (const Vector2& v : shape)
    cells.push_back(Cell{make_vector({v(0), v(1)}), alphabet[rng() % alphabet.size()]});
  return Pattern(std::move(cells));
}

Rectangle random_rectangle(Rng& rng, const std::vector<Symbol>& alphabet, std::size_t width,
                           std::size_t height) {
  Rectangle r{width, height, {}};
  for (std::size_t i = 0; i < width * height; ++i) r.types.push_back(alphabet[rng() % alphabet.size()]);
  return r;
}

WangTileSet random_tiles(Rng& rng, std::size_t max_tiles, std::size_t colors) {
  WangTileSet out;
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_tiles)));
  auto color = [&] { return Symbol(1, static_cast<char>('a' + rng() % colors)); };
  for (std::size_t i = 0; i < n; ++i) {
    WangTile t;
    t.name = "T" + std::to_string(i);
    t.north = color();
    t.east = color();
    t.south = color();
    t.west = color();
    out.tiles.push_back(t);
  }
  return out;
}

}  // namespace combsub::testing
