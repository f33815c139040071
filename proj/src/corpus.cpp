#include "combsub/corpus.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace combsub {

namespace detail {
// Generated from the fixtures/ directory at configure time.
const std::map<std::string, std::string_view>& embedded_fixtures();
}  // namespace detail

namespace {

const std::vector<std::string> kExamples = {"intro",  "jp",         "inconsistent", "overlapping",
                                            "tshape", "overlapfar", "mini"};

const std::map<std::string, std::vector<std::string>>& example_tags() {
  static const std::map<std::string, std::vector<std::string>> kTags = {
      {"intro", {"consistent"}},
      {"jp", {"consistent"}},
      {"inconsistent", {"inconsistent"}},
      {"overlapping", {"overlapping"}},
      {"tshape", {"domino-complete", "consistent"}},
      {"mini", {"restricted-complete", "consistent"}},
  };
  return kTags;
}

NamedExample from_document(std::string name, Document doc) {
  NamedExample out;
  out.name = std::move(name);
  if (doc.has_substitution) out.substitution = std::move(doc.substitution);
  out.patterns = std::move(doc.patterns);
  return out;
}

void replace_all(std::string& text, const std::string& from, const std::string& to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

}  // namespace

const Pattern& NamedExample::pattern(std::string_view pattern_name) const {
  for (const NamedPattern& p : patterns) {
    if (p.name == pattern_name) return p.pattern;
  }
  throw UnknownExample("example " + name + " has no pattern " + std::string(pattern_name));
}

bool NamedExample::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::vector<std::string> example_names() { return kExamples; }

std::string_view fixture_text(std::string_view name) {
  const auto& all = detail::embedded_fixtures();
  auto it = all.find(std::string(name));
  if (it == all.end()) throw UnknownExample("no fixture named " + std::string(name));
  return it->second;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::embedded_fixtures()) out.push_back(name);
  return out;
}

NamedExample overlapfar(int n) {
  if (n < 0) throw UnknownExample("overlapfar needs n >= 0");
  std::string text(fixture_text("overlapfar"));
  replace_all(text, "{n+1}", std::to_string(n + 1));
  replace_all(text, "{1-n}", std::to_string(1 - n));
  replace_all(text, "{-n}", std::to_string(-n));
  replace_all(text, "{n}", std::to_string(n));
  NamedExample out = from_document("overlapfar(" + std::to_string(n) + ")", parse_document(text));
  out.tags = {"domino-complete", "consistent"};
  if (n >= 1) {
    // The 2-cell and the lone 1-cell are n apart; a row of 1s above joins them.
    std::vector<Cell> cells{Cell{make_vector({0, 0}), "2"}, Cell{make_vector({n, 0}), "1"}};
    for (int i = 0; i <= n; ++i) cells.push_back(Cell{make_vector({i, 1}), "1"});
    out.patterns.push_back(NamedPattern{"P_" + std::to_string(n), Pattern(std::move(cells)), 0});
    out.tags.push_back("overlapping");
  }
  return out;
}

NamedExample example(std::string_view name) {
  if (name.rfind("overlapfar", 0) == 0) {
    std::string_view arg = name.substr(10);
    if (arg.empty()) return overlapfar(2);
    if (arg.size() < 3 || arg.front() != '(' || arg.back() != ')')
      throw UnknownExample("expected overlapfar(n), got " + std::string(name));
    arg = arg.substr(1, arg.size() - 2);
    int n = 0;
    for (char c : arg) {
      if (c < '0' || c > '9' || n > 100000) throw UnknownExample("bad index in " + std::string(name));
      n = n * 10 + (c - '0');
    }
    return overlapfar(n);
  }
  if (std::find(kExamples.begin(), kExamples.end(), name) == kExamples.end())
    throw UnknownExample("unknown example " + std::string(name));
  NamedExample out = from_document(std::string(name), parse_document(fixture_text(name)));
  out.tags = example_tags().at(out.name);
  return out;
}

std::vector<Pattern> surf_squares() { return parse_patterns(fixture_text("surf")); }

Pattern Rectangle::to_pattern() const {
  std::vector<Cell> cells;
  cells.reserve(types.size());
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x)
      cells.push_back(Cell{make_vector({static_cast<Scalar>(x), static_cast<Scalar>(y)}), at(x, y)});
  }
  return Pattern(std::move(cells));
}

std::vector<Rectangle> generate_rectangles(const std::vector<Pattern>& allowed, std::size_t width,
                                           std::size_t height, std::size_t limit,
                                           std::uint64_t seed) {
  if (width < 2 || height < 2) throw Error("rectangles need width and height of at least 2");
  using Window = std::array<Symbol, 4>;  // bl, br, tl, tr
  std::set<Window> windows;
  std::set<Symbol, SymbolLess> symbols;
  for (const Pattern& p : allowed) {
    // Cells sorted: (0,0), (0,1), (1,0), (1,1) relative to the corner.
    if (p.size() != 4) throw Error("allowed windows must be 2x2 squares");
    windows.insert(Window{p[0].type, p[2].type, p[1].type, p[3].type});
    for (const Cell& c : p) symbols.insert(c.type);
  }
  const std::vector<Symbol> alphabet(symbols.begin(), symbols.end());

  std::mt19937_64 rng(seed);
  std::vector<Rectangle> out;
  Rectangle cur{width, height, std::vector<Symbol>(width * height)};

  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == width * height) {
      out.push_back(cur);
      return;
    }
    const std::size_t x = i % width, y = i / width;
    std::vector<Symbol> order = alphabet;
    shuffle(order, rng);
    for (const Symbol& t : order) {
      cur.types[i] = t;
      if (x >= 1 && y >= 1 &&
          !windows.count(Window{cur.at(x - 1, y - 1), cur.at(x, y - 1), cur.at(x - 1, y), t}))
        continue;
      fill(i + 1);
      if (out.size() >= limit) return;
    }
  };
  if (limit > 0) fill(0);
  return out;
}

std::vector<Rectangle> generate_surface_rectangles(std::size_t width, std::size_t height,
                                                   std::size_t limit, std::uint64_t seed) {
  return generate_rectangles(surf_squares(), width, height, limit, seed);
}

std::vector<Pattern> sample_covered_subpatterns(const Rectangle& config, const Substitution& s,
                                                std::size_t count, std::uint64_t seed) {
  std::vector<Pattern> out;
  if (config.types.empty()) return out;
  const Pattern whole = config.to_pattern();
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t target = 1 + draw(rng, whole.size());
    std::vector<std::size_t> chosen{draw(rng, whole.size())};
    std::vector<bool> in(whole.size(), false);
    in[chosen[0]] = true;
    while (chosen.size() < target) {
      std::vector<std::size_t> candidates;
      for (std::size_t i : chosen) {
        const Cell& c = whole[i];
        for (const Move& m : s.moves(c.type)) {
          if (m.offset.size() != c.vector.size()) continue;
          auto j = whole.find(c.vector + m.offset);
          if (j && !in[*j] && whole[*j].type == m.other &&
              std::find(candidates.begin(), candidates.end(), *j) == candidates.end())
            candidates.push_back(*j);
        }
      }
      if (candidates.empty()) break;
      const std::size_t next = candidates[draw(rng, candidates.size())];
      in[next] = true;
      chosen.push_back(next);
    }
    std::vector<Cell> cells;
    for (std::size_t i : chosen) cells.push_back(whole[i]);
    out.push_back(Pattern(std::move(cells)));
  }
  return out;
}

}  // namespace combsub
