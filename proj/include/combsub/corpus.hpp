#pragma once

#include "combsub/io.hpp"
#include "combsub/substitution.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace combsub {

class UnknownExample : public Error {
 public:
  using Error::Error;
};

/// Tags: consistent, inconsistent, overlapping, domino-complete, restricted-complete.
struct NamedExample {
  std::string name;
  std::optional<Substitution> substitution;
  std::vector<NamedPattern> patterns;
  std::vector<std::string> tags;

  /// Throws UnknownExample when there is no pattern of that name.
  const Pattern& pattern(std::string_view pattern_name) const;
  bool has_tag(std::string_view tag) const;
};

/// intro, jp, inconsistent, overlapping, tshape, overlapfar, mini.
std::vector<std::string> example_names();
/// Accepts the names above; overlapfar takes its index as `overlapfar(n)`.
NamedExample example(std::string_view name);
/// sigma_n with the pattern P_n (n >= 1).
NamedExample overlapfar(int n);

/// Raw text of a file under fixtures/, built into the library.
std::string_view fixture_text(std::string_view name);
std::vector<std::string> fixture_names();

/// The 28 allowed squares over {1,2,3}.
std::vector<Pattern> surf_squares();

/// Row-major types, row 0 at the bottom.
struct Rectangle {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Symbol> types;

  const Symbol& at(std::size_t x, std::size_t y) const { return types[y * width + x]; }
  Pattern to_pattern() const;
};

/// Backtracking over the symbols of `allowed`, row by row; every 2x2 window
/// must be one of `allowed`. Value order at each cell is shuffled from `seed`.
std::vector<Rectangle> generate_rectangles(const std::vector<Pattern>& allowed, std::size_t width,
                                           std::size_t height, std::size_t limit,
                                           std::uint64_t seed);
std::vector<Rectangle> generate_surface_rectangles(std::size_t width, std::size_t height,
                                                   std::size_t limit, std::uint64_t seed);

/// Random connected subsets of the rectangle grown along rule dominoes, so
/// each is covered for s.
std::vector<Pattern> sample_covered_subpatterns(const Rectangle& config, const Substitution& s,
                                                std::size_t count, std::uint64_t seed);

}  // namespace combsub
