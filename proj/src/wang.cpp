#include "combsub/wang.hpp"

#include <algorithm>
#include <set>

namespace combsub {

namespace {

const Vector2 kEast(1, 0), kNorth(0, 1), kWest(-1, 0), kSouth(0, -1);

Scalar l1(const Vector2& v) { return std::abs(v(0)) + std::abs(v(1)); }

LatticeVector lv(Scalar x, Scalar y) { return make_vector({x, y}); }

Pattern single_origin(const Symbol& t) { return Pattern({Cell{lv(0, 0), t}}); }

void require_distinct_names(const WangTileSet& tiles) {
  std::set<Symbol> seen;
  for (const WangTile& t : tiles.tiles) {
    if (!is_valid_symbol(t.name)) throw Error("invalid tile name '" + t.name + "'");
    if (!seen.insert(t.name).second) throw Error("duplicate tile name " + t.name);
  }
}

}  // namespace

std::optional<std::size_t> WangTileSet::index_of(const Symbol& name) const {
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (tiles[i].name == name) return i;
  }
  return std::nullopt;
}

bool matches(const WangTile& a, const WangTile& b, const Vector2& dir) {
  if (dir == kEast) return a.east == b.west;
  if (dir == kWest) return a.west == b.east;
  if (dir == kNorth) return a.north == b.south;
  if (dir == kSouth) return a.south == b.north;
  throw Error("not a unit direction");
}

const std::vector<Vector2>& directions() {
  static const std::vector<Vector2> kAll{kEast, kNorth, kWest, kSouth};
  return kAll;
}

char direction_letter(const Vector2& dir) {
  if (dir == kEast) return 'E';
  if (dir == kNorth) return 'N';
  if (dir == kWest) return 'W';
  if (dir == kSouth) return 'S';
  throw Error("not a unit direction");
}

bool is_valid_cycle(const WangTileSet& tiles, const TileCycle& c) {
  const auto& p = c.placements;
  if (p.size() < 5 || !(p.front() == p.back())) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i].tile >= tiles.size()) return false;
    const Vector2 d = p[i + 1].position - p[i].position;
    if (l1(d) != 1) return false;
    if (!matches(tiles[p[i].tile], tiles[p[i + 1].tile], d)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (p[j].position == p[i].position) return false;
    }
  }
  return true;
}

namespace {

struct CycleSearch {
  const WangTileSet& tiles;
  std::size_t max_cells;
  std::vector<Placement> path;
  std::size_t nodes = 0;

  bool occupied(const Vector2& v) const {
    return std::any_of(path.begin(), path.end(), [&](const Placement& p) { return p.position == v; });
  }

  bool extend() {
    ++nodes;
    const Placement cur = path.back();
    const Placement& start = path.front();
    for (std::size_t t = 0; t < tiles.size(); ++t) {
      for (const Vector2& dir : directions()) {
        if (!matches(tiles[cur.tile], tiles[t], dir)) continue;
        const Vector2 next = cur.position + dir;
        if (next == start.position) {
          if (t == start.tile && path.size() >= 4) {
            path.push_back(start);
            return true;
          }
          continue;
        }
        // Still room to walk back to the origin.
        if (path.size() >= max_cells || l1(next) > static_cast<Scalar>(max_cells - path.size()))
          continue;
        if (occupied(next)) continue;
        path.push_back(Placement{next, t});
        if (extend()) return true;
        path.pop_back();
      }
    }
    return false;
  }
};

}  // namespace

std::optional<TileCycle> find_cycle(const WangTileSet& tiles, std::size_t max_cells,
                                    CycleSearchStats* stats) {
  CycleSearch search{tiles, max_cells, {}};
  std::optional<TileCycle> found;
  if (max_cells >= 4) {
    for (std::size_t t = 0; t < tiles.size() && !found; ++t) {
      search.path = {Placement{Vector2::Zero(), t}};
      if (search.extend()) found = TileCycle{search.path};
    }
  }
  if (stats) stats->nodes = search.nodes;
  return found;
}

Symbol arrow_symbol(const WangTile& t, char arrow) { return t.name + "." + arrow; }

Substitution build_consistency_reduction(const WangTileSet& tiles) {
  require_distinct_names(tiles);
  std::vector<Symbol> alphabet;
  Substitution::BaseRule base;
  for (const WangTile& t : tiles.tiles) {
    for (char arrow : {'E', 'N', 'W', 'S'}) {
      alphabet.push_back(arrow_symbol(t, arrow));
      base.emplace(alphabet.back(), single_origin(alphabet.back()));
    }
  }

  // Arrows the pointed cell may carry: anything but back at the pointing cell.
  static const std::string kNotWest = "ENS", kNotEast = "WNS", kNotSouth = "NEW", kNotNorth = "SEW";
  std::vector<ConcatenationRule> rules;
  for (const WangTile& a : tiles.tiles) {
    for (const WangTile& b : tiles.tiles) {
      if (matches(a, b, kEast)) {
        // a left of b.
        for (char x : kNotWest) rules.push_back({arrow_symbol(a, 'E'), arrow_symbol(b, x), lv(1, 0), lv(1, 0)});
        for (char x : kNotEast) rules.push_back({arrow_symbol(a, x), arrow_symbol(b, 'W'), lv(1, 0), lv(-1, 0)});
      }
      if (matches(a, b, kNorth)) {
        // a below b.
        for (char x : kNotSouth) rules.push_back({arrow_symbol(a, 'N'), arrow_symbol(b, x), lv(0, 1), lv(1, 0)});
        for (char x : kNotNorth) rules.push_back({arrow_symbol(a, x), arrow_symbol(b, 'S'), lv(0, 1), lv(-1, 0)});
      }
    }
  }
  Substitution s(std::move(alphabet), std::move(base), std::move(rules));
  require_valid(s);
  return s;
}

Path arrow_loop(const WangTileSet& tiles, const TileCycle& c) {
  if (!is_valid_cycle(tiles, c)) throw Error("not a valid tile cycle");
  Path out;
  const auto& p = c.placements;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const char arrow = direction_letter(p[i + 1].position - p[i].position);
    out.cells.push_back(Cell{lv(p[i].position(0), p[i].position(1)), arrow_symbol(tiles[p[i].tile], arrow)});
  }
  out.cells.push_back(out.cells.front());
  return out;
}

OverlapReduction build_overlap_reduction(const WangTileSet& tiles, std::size_t a, std::size_t b) {
  require_distinct_names(tiles);
  if (a >= tiles.size() || b >= tiles.size()) throw PreconditionError("tile index out of range");
  const WangTile& ta = tiles[a];
  const WangTile& tb = tiles[b];
  if (!matches(ta, tb, kEast))
    throw PreconditionError("tile " + ta.name + " does not match " + tb.name + " on its east edge");

  std::set<Symbol> taken;
  for (const WangTile& t : tiles.tiles) taken.insert(t.name);
  auto fresh = [&](const Symbol& stem) {
    for (int k = 0;; ++k) {
      Symbol s = stem + "@" + std::to_string(k);
      if (taken.insert(s).second) return s;
    }
  };
  OverlapReduction out;
  out.a0 = fresh(ta.name);
  out.b0 = fresh(tb.name);

  std::vector<Symbol> alphabet;
  Substitution::BaseRule base;
  for (const WangTile& t : tiles.tiles) alphabet.push_back(t.name);
  alphabet.push_back(out.a0);
  alphabet.push_back(out.b0);
  for (const Symbol& s : alphabet) base.emplace(s, single_origin(s));

  std::vector<ConcatenationRule> rules;
  for (const WangTile& t : tiles.tiles) {
    for (const WangTile& u : tiles.tiles) {
      if (matches(t, u, kEast)) rules.push_back({t.name, u.name, lv(1, 0), lv(2, 0)});
      if (matches(t, u, kNorth)) rules.push_back({t.name, u.name, lv(0, 1), lv(0, 1)});
    }
  }
  for (const WangTile& t : tiles.tiles) {
    if (matches(t, ta, kEast)) rules.push_back({t.name, out.a0, lv(1, 0), lv(3, 0)});
    if (matches(ta, t, kNorth)) rules.push_back({out.a0, t.name, lv(0, 1), lv(-1, 1)});
    if (matches(t, ta, kNorth)) rules.push_back({t.name, out.a0, lv(0, 1), lv(1, 1)});
  }
  for (const WangTile& t : tiles.tiles) {
    if (matches(tb, t, kEast)) rules.push_back({out.b0, t.name, lv(1, 0), lv(3, 0)});
    if (matches(tb, t, kNorth)) rules.push_back({out.b0, t.name, lv(0, 1), lv(1, 1)});
    if (matches(t, tb, kNorth)) rules.push_back({t.name, out.b0, lv(0, 1), lv(-1, 1)});
  }
  out.substitution = Substitution(std::move(alphabet), std::move(base), std::move(rules));
  require_valid(out.substitution);
  return out;
}

Pattern tile_pattern(const WangTileSet& tiles, const TileCycle& c) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < c.placements.size(); ++i) {
    const Placement& p = c.placements[i];
    cells.push_back(Cell{lv(p.position(0), p.position(1)), tiles[p.tile].name});
  }
  return Pattern(std::move(cells));
}

}  // namespace combsub
