#pragma once

#include "combsub/substitution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace combsub {

struct WangTile {
  Symbol name;
  Symbol north, east, south, west;

  friend bool operator==(const WangTile&, const WangTile&) = default;
};

/// Tiles keep their input index; names must be distinct.
struct WangTileSet {
  std::vector<WangTile> tiles;

  std::size_t size() const { return tiles.size(); }
  const WangTile& operator[](std::size_t i) const { return tiles[i]; }
  std::optional<std::size_t> index_of(const Symbol& name) const;
};

/// b placed at a + dir agrees with a on the shared edge.
bool matches(const WangTile& a, const WangTile& b, const Vector2& dir);

/// E, N, W, S.
const std::vector<Vector2>& directions();
/// "E", "N", "W" or "S" for a unit vector.
char direction_letter(const Vector2& dir);

struct Placement {
  Vector2 position;
  std::size_t tile;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Closed chain of placements; the last repeats the first.
struct TileCycle {
  std::vector<Placement> placements;

  std::size_t size() const { return placements.size(); }
};

/// Checks adjacency, colors, closure, n >= 5 and distinct positions.
bool is_valid_cycle(const WangTileSet& tiles, const TileCycle& c);

struct CycleSearchStats {
  std::size_t nodes = 0;
};

/// Depth-first search from a tile at the origin; at most `max_cells` distinct
/// cells. Tiles are tried in index order, then directions E, N, W, S.
/// nullopt means none within the bound, not that none exists.
std::optional<TileCycle> find_cycle(const WangTileSet& tiles, std::size_t max_cells,
                                    CycleSearchStats* stats = nullptr);

/// `name.E`, `name.N`, `name.W`, `name.S`.
Symbol arrow_symbol(const WangTile& t, char arrow);

/// Alphabet T x {E,N,W,S}; a rule for each matching domino in which exactly
/// one cell points at the other and the pointed cell does not point back,
/// oriented so that sigma_rule(pointing, pointed) = (1,0).
Substitution build_consistency_reduction(const WangTileSet& tiles);

/// The cycle with each cell pointing at its successor, as a loop.
Path arrow_loop(const WangTileSet& tiles, const TileCycle& c);

struct OverlapReduction {
  Substitution substitution;
  Symbol a0;
  Symbol b0;
};

/// Horizontal factor-two copy of the tiles plus fresh states a0 (shifted
/// right by one) and b0 (shifted left by one). Needs matches(a, b, E).
OverlapReduction build_overlap_reduction(const WangTileSet& tiles, std::size_t a, std::size_t b);

/// Cells of the cycle typed by tile name.
Pattern tile_pattern(const WangTileSet& tiles, const TileCycle& c);

}  // namespace combsub
