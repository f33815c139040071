#pragma once

#include "combsub/substitution.hpp"
#include "combsub/wang.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace combsub {

/// Syntax or validation error in a text document; line and column are 1-based
/// (column 0 when the whole line is at fault).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct NamedPattern {
  std::string name;
  Pattern pattern;
  std::size_t line = 0;
};

/// Line numbers of the substitution's source, for diagnostics.
struct SourceMap {
  std::size_t alphabet_line = 0;
  std::map<Symbol, std::size_t, SymbolLess> base_lines;
  std::vector<std::size_t> rule_lines;
};

/// One text file: substitution lines, pattern blocks and tiles, in any mix.
///
///   alphabet 1 2 3
///   base 1 : (0,0)->2 (0,1)->1
///   rule 1 2 (0,1) -> (1,2)
///   pattern P
///   cell (0,0) 2
///   tile A n=red e=blue s=red w=blue
struct Document {
  bool has_substitution = false;
  Substitution substitution;
  std::vector<NamedPattern> patterns;
  WangTileSet tiles;
  SourceMap source;
};

/// Syntax only; the substitution may violate its invariants.
Document parse_document_unchecked(std::string_view text);
/// Also runs validate(); the first violation becomes a ParseError at its line.
Document parse_document(std::string_view text);

/// "line N: message" for each violation, in source order.
std::vector<std::string> describe_violations(const Document& doc,
                                             const std::vector<Violation>& violations);

Substitution parse_substitution(std::string_view text);
/// The first pattern block of the text.
Pattern parse_pattern(std::string_view text);
std::vector<Pattern> parse_patterns(std::string_view text);
WangTileSet parse_tiles(std::string_view text);

/// Canonical form: alphabet, base lines in symbol order, rules by rule_less.
std::string serialize_substitution(const Substitution& s);
std::string serialize_pattern(const Pattern& p, const std::string& name = {});
std::string serialize_tiles(const WangTileSet& tiles);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

struct RenderStyle {
  int cell_size = 20;
  bool label = true;
  /// Symbols missing from the map get a palette color.
  std::optional<std::map<Symbol, std::string, SymbolLess>> fill_map;
  std::string stroke = "black";
};

/// Standalone SVG 1.1. The cell at (x,y) is a square of side s at (s*x, -s*y),
/// so y points up as in the model.
std::string render_svg(const Pattern& p, const RenderStyle& style = {});

}  // namespace combsub
