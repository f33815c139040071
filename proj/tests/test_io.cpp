#include "combsub/corpus.hpp"
#include "combsub/io.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <filesystem>

using namespace combsub;
using combsub::testing::Rng;

namespace {
Cell cell(Scalar x, Scalar y, const Symbol& t) { return Cell{make_vector({x, y}), t}; }

std::size_t error_line(std::string_view text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}
}  // namespace

TEST_CASE("substitutions survive a text round trip") {
  for (const std::string& name : example_names()) {
    const NamedExample ex = example(name);
    if (!ex.substitution) continue;
    const std::string text = serialize_substitution(*ex.substitution);
    CHECK(parse_substitution(text) == *ex.substitution);
    CHECK(serialize_substitution(parse_substitution(text)) == text);
  }
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const Substitution s = combsub::testing::random_domino_complete(rng, 3);
    CHECK(parse_substitution(serialize_substitution(s)) == s);
  }
}

TEST_CASE("patterns and tiles round trip") {
  const Pattern p({cell(0, 0, "2"), cell(-3, 4, "x.E")});
  const std::string text = serialize_pattern(p, "Q");
  CHECK(text.rfind("pattern Q\n", 0) == 0);
  CHECK(parse_pattern(text) == p);
  const auto all = parse_patterns(text + "\n" + serialize_pattern(p, "R"));
  CHECK(all.size() == 2);

  const WangTileSet ts = parse_tiles("tile A n=x e=p s=x w=q\ntile B n=y e=q s=y w=p\n");
  REQUIRE(ts.size() == 2);
  CHECK(ts[1].west == "p");
  CHECK(parse_tiles(serialize_tiles(ts)).tiles == ts.tiles);
}

TEST_CASE("comments and blank lines are ignored") {
  const Document d = parse_document("# header\n\nalphabet 1  # trailing\nbase 1 : (0,0)->1\n");
  CHECK(d.has_substitution);
  CHECK(d.substitution.alphabet().size() == 1);
  CHECK(d.source.alphabet_line == 3);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_document("alphabet 1\nbase 1 : (0,0)->1\nrule 1 1 (0,1 -> (1,0)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
    CHECK(std::string(e.what()).rfind("line 3, column", 0) == 0);
  }
  CHECK(error_line("alphabet 1\nalphabet 2\n") == 2);
  CHECK(error_line("base 1 : (0,0)->1\n") > 0);
  CHECK(error_line("pattern\ncell (0,0) a\ncell (0,0) b\n") == 3);
  CHECK(error_line("frobnicate\n") == 1);
}

TEST_CASE("invariant violations point at the offending rule") {
  const std::string text = "alphabet 1\nbase 1 : (0,0)->1\nrule 1 1 (1,0) -> (1,0)\nrule 1 1 (0,0) -> (1,0)\n";
  CHECK(error_line(text) == 4);
  const Document d = parse_document_unchecked(text);
  const auto lines = describe_violations(d, validate(d.substitution));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("line 4:", 0) == 0);
}

TEST_CASE("svg places cells with y pointing up") {
  const Pattern p({cell(0, 0, "a<b"), cell(1, 2, "2")});
  const std::string svg = render_svg(p);
  CHECK(svg.find("viewBox=\"0 -40 40 60\"") != std::string::npos);
  CHECK(svg.find("<rect x=\"20\" y=\"-40\"") != std::string::npos);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("a<b") == std::string::npos);

  RenderStyle plain;
  plain.label = false;
  plain.cell_size = 5;
  plain.fill_map = std::map<Symbol, std::string, SymbolLess>{{"2", "red"}};
  const std::string small = render_svg(p, plain);
  CHECK(small.find("<text") == std::string::npos);
  CHECK(small.find("fill=\"red\"") != std::string::npos);
  CHECK(small.find("width=\"5\"") != std::string::npos);
}

TEST_CASE("files are written and read back verbatim") {
  const auto path = std::filesystem::path(COMBSUB_BINARY_DIR) / "io-test.txt";
  write_file(path.string(), "line\n\xff\n");
  CHECK(read_file(path.string()) == "line\n\xff\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file(path.string()), Error);
}
