#include "combsub/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace combsub {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") +
            ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

bool is_token_char(char c) {
  return !is_space(c) && c != '(' && c != ')' && c != ',' && c != ':' && c != '#';
}

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }

  std::string_view word(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_token_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return text_.substr(start, pos_ - start);
  }

  Symbol symbol() { return Symbol(word("a symbol")); }

  void expect(std::string_view lit) {
    skip_space();
    if (text_.substr(pos_, lit.size()) != lit) fail("expected '" + std::string(lit) + "'");
    pos_ += lit.size();
  }

  Scalar integer() {
    skip_space();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    Scalar value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) fail("integer out of range");
    if (ec != std::errc()) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  LatticeVector vector() {
    expect("(");
    std::vector<Scalar> coords{integer()};
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        coords.push_back(integer());
        continue;
      }
      break;
    }
    expect(")");
    if (coords.size() > static_cast<std::size_t>(kMaxDimension))
      fail("dimension above " + std::to_string(kMaxDimension));
    LatticeVector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
    return v;
  }

  std::string_view rest() {
    skip_space();
    std::string_view r = text_.substr(pos_);
    pos_ = text_.size();
    while (!r.empty() && is_space(r.back())) r.remove_suffix(1);
    return r;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct PendingPattern {
  std::string name;
  std::size_t line;
  std::vector<Cell> cells;
  std::map<LatticeVector, std::size_t, LatticeLess> seen;
};

Pattern finish_pattern(std::vector<Cell> cells, std::size_t line) {
  try {
    return Pattern(std::move(cells));
  } catch (const Error& e) {
    throw ParseError(line, 0, e.what());
  }
}

void parse_tile(LineCursor& cur, WangTileSet& tiles) {
  WangTile t;
  t.name = cur.symbol();
  if (tiles.index_of(t.name)) cur.fail("duplicate tile " + t.name);
  std::map<char, Symbol> edges;
  while (!cur.at_end()) {
    const std::size_t col = cur.column();
    std::string_view kv = cur.word("an edge color");
    if (kv.size() < 3 || kv[1] != '=' || std::string_view("nesw").find(kv[0]) == std::string_view::npos)
      throw ParseError(cur.line(), col, "expected n=, e=, s= or w=");
    if (!edges.emplace(kv[0], Symbol(kv.substr(2))).second)
      throw ParseError(cur.line(), col, std::string("edge ") + kv[0] + " given twice");
  }
  if (edges.size() != 4) cur.fail("tile needs all four edges n= e= s= w=");
  t.north = edges['n'];
  t.east = edges['e'];
  t.south = edges['s'];
  t.west = edges['w'];
  tiles.tiles.push_back(std::move(t));
}

}  // namespace

Document parse_document_unchecked(std::string_view text) {
  Document doc;
  std::optional<std::vector<Symbol>> alphabet;
  Substitution::BaseRule base;
  std::vector<ConcatenationRule> rules;
  std::optional<std::size_t> first_substitution_line;
  std::optional<PendingPattern> pending;

  auto flush = [&] {
    if (!pending) return;
    doc.patterns.push_back(
        NamedPattern{pending->name, finish_pattern(std::move(pending->cells), pending->line),
                     pending->line});
    pending.reset();
  };

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineCursor cur(line, lineno);
    if (cur.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view directive = cur.word("a directive");

    if (directive == "alphabet") {
      if (alphabet) cur.fail("second alphabet line");
      alphabet.emplace();
      std::set<Symbol> seen;
      while (!cur.at_end()) {
        Symbol s = cur.symbol();
        if (!seen.insert(s).second) cur.fail("symbol " + s + " listed twice");
        alphabet->push_back(std::move(s));
      }
      doc.source.alphabet_line = lineno;
      if (!first_substitution_line) first_substitution_line = lineno;
    } else if (directive == "base") {
      Symbol sym = cur.symbol();
      if (base.count(sym)) cur.fail("second base line for symbol " + sym);
      cur.expect(":");
      std::vector<Cell> cells;
      while (!cur.at_end()) {
        LatticeVector v = cur.vector();
        cur.expect("->");
        cells.push_back(Cell{std::move(v), cur.symbol()});
      }
      base.emplace(sym, finish_pattern(std::move(cells), lineno));
      doc.source.base_lines[sym] = lineno;
      if (!first_substitution_line) first_substitution_line = lineno;
    } else if (directive == "rule") {
      ConcatenationRule r;
      r.t = cur.symbol();
      r.t_prime = cur.symbol();
      r.u = cur.vector();
      cur.expect("->");
      r.v = cur.vector();
      if (!cur.at_end()) cur.fail("unexpected text after rule");
      rules.push_back(std::move(r));
      doc.source.rule_lines.push_back(lineno);
      if (!first_substitution_line) first_substitution_line = lineno;
    } else if (directive == "pattern") {
      flush();
      pending = PendingPattern{std::string(cur.rest()), lineno, {}, {}};
    } else if (directive == "cell") {
      if (!pending) cur.fail("cell outside a pattern block");
      LatticeVector v = cur.vector();
      const std::size_t col = cur.column();
      Symbol t = cur.symbol();
      if (!cur.at_end()) cur.fail("unexpected text after cell");
      if (!pending->cells.empty() && pending->cells.front().dimension() != v.size())
        throw ParseError(lineno, 0, "cell dimension differs from the rest of the pattern");
      auto [it, inserted] = pending->seen.emplace(v, lineno);
      if (!inserted)
        throw ParseError(lineno, col,
                         "second cell at " + format_vector(v) + " (first on line " +
                             std::to_string(it->second) + ")");
      pending->cells.push_back(Cell{std::move(v), std::move(t)});
    } else if (directive == "tile") {
      parse_tile(cur, doc.tiles);
    } else {
      throw ParseError(lineno, 1, "unknown directive '" + std::string(directive) + "'");
    }
    if (end == text.size()) break;
  }
  flush();

  if (first_substitution_line) {
    if (!alphabet) throw ParseError(*first_substitution_line, 0, "missing alphabet line");
    doc.has_substitution = true;
    doc.substitution = Substitution(std::move(*alphabet), std::move(base), std::move(rules));
  }
  return doc;
}

namespace {

std::size_t violation_line(const Document& doc, const Violation& v) {
  if (!v.rules.empty()) return doc.source.rule_lines.at(v.rules.back());
  if (v.symbol) {
    auto it = doc.source.base_lines.find(*v.symbol);
    if (it != doc.source.base_lines.end()) return it->second;
  }
  return doc.source.alphabet_line;
}

}  // namespace

std::vector<std::string> describe_violations(const Document& doc,
                                             const std::vector<Violation>& violations) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  for (const Violation& v : violations) lines.emplace_back(violation_line(doc, v), v.message);
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (const auto& [line, msg] : lines) out.push_back("line " + std::to_string(line) + ": " + msg);
  return out;
}

Document parse_document(std::string_view text) {
  Document doc = parse_document_unchecked(text);
  if (doc.has_substitution) {
    auto violations = validate(doc.substitution);
    if (!violations.empty()) {
      const Violation* first = &violations.front();
      for (const Violation& v : violations) {
        if (violation_line(doc, v) < violation_line(doc, *first)) first = &v;
      }
      throw ParseError(violation_line(doc, *first), 0, first->message);
    }
  }
  return doc;
}

Substitution parse_substitution(std::string_view text) {
  Document doc = parse_document(text);
  if (!doc.has_substitution) throw ParseError(1, 0, "no substitution in input");
  return std::move(doc.substitution);
}

Pattern parse_pattern(std::string_view text) {
  Document doc = parse_document_unchecked(text);
  if (doc.patterns.empty()) throw ParseError(1, 0, "no pattern block in input");
  return std::move(doc.patterns.front().pattern);
}

std::vector<Pattern> parse_patterns(std::string_view text) {
  Document doc = parse_document_unchecked(text);
  std::vector<Pattern> out;
  for (NamedPattern& p : doc.patterns) out.push_back(std::move(p.pattern));
  return out;
}

WangTileSet parse_tiles(std::string_view text) {
  Document doc = parse_document_unchecked(text);
  if (doc.tiles.tiles.empty()) throw ParseError(1, 0, "no tile lines in input");
  return std::move(doc.tiles);
}

std::string serialize_substitution(const Substitution& s) {
  std::ostringstream os;
  os << "alphabet";
  for (const Symbol& a : s.alphabet()) os << ' ' << a;
  os << '\n';
  for (const auto& [sym, image] : s.base()) {
    os << "base " << sym << " :";
    for (const Cell& c : image) os << ' ' << format_vector(c.vector) << "->" << c.type;
    os << '\n';
  }
  for (const ConcatenationRule& r : s.canonical_rules()) {
    os << "rule " << r.t << ' ' << r.t_prime << ' ' << format_vector(r.u) << " -> "
       << format_vector(r.v) << '\n';
  }
  return os.str();
}

std::string serialize_pattern(const Pattern& p, const std::string& name) {
  std::string out = name.empty() ? "pattern\n" : "pattern " + name + "\n";
  for (const Cell& c : p) out += "cell " + format_vector(c.vector) + " " + c.type + "\n";
  return out;
}

std::string serialize_tiles(const WangTileSet& tiles) {
  std::string out;
  for (const WangTile& t : tiles.tiles)
    out += "tile " + t.name + " n=" + t.north + " e=" + t.east + " s=" + t.south + " w=" + t.west +
           "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("error writing " + path);
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* const kPalette[] = {"#f4cccc", "#cfe2f3", "#d9ead3", "#fff2cc",
                                "#ead1dc", "#d0e0e3", "#fce5cd", "#d9d2e9"};

}  // namespace

std::string render_svg(const Pattern& p, const RenderStyle& style) {
  if (style.cell_size <= 0) throw Error("cell size must be positive");
  if (!p.empty() && p.dimension() != 2) throw DimensionMismatch("render_svg needs a 2-dimensional pattern");
  const Scalar s = style.cell_size;

  Scalar min_x = 0, max_x = -1, min_y = 0, max_y = -1;
  std::set<Symbol, SymbolLess> types;
  for (const Cell& c : p) {
    if (max_x < min_x) {
      min_x = max_x = c.vector(0);
      min_y = max_y = c.vector(1);
    }
    min_x = std::min(min_x, c.vector(0));
    max_x = std::max(max_x, c.vector(0));
    min_y = std::min(min_y, c.vector(1));
    max_y = std::max(max_y, c.vector(1));
    types.insert(c.type);
  }
  const Scalar width = p.empty() ? 0 : s * (max_x - min_x + 1);
  const Scalar height = p.empty() ? 0 : s * (max_y - min_y + 1);
  const Scalar left = p.empty() ? 0 : s * min_x;
  const Scalar top = p.empty() ? 0 : -s * max_y;

  auto fill = [&](const Symbol& t) -> std::string {
    if (style.fill_map) {
      auto it = style.fill_map->find(t);
      if (it != style.fill_map->end()) return it->second;
    }
    const auto idx = static_cast<std::size_t>(std::distance(types.begin(), types.find(t)));
    return kPalette[idx % std::size(kPalette)];
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"" << left << ' ' << top << ' ' << width << ' '
     << height << "\">\n";
  for (const Cell& c : p) {
    const Scalar x = s * c.vector(0), y = -s * c.vector(1);
    os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << s << "\" height=\"" << s
       << "\" fill=\"" << xml_escape(fill(c.type)) << "\" stroke=\"" << xml_escape(style.stroke)
       << "\"/>\n";
    if (style.label) {
      os << "  <text x=\"" << x + s / 2 << "\" y=\"" << y + s / 2
         << "\" font-size=\"" << std::max<Scalar>(1, s / 2)
         << "\" text-anchor=\"middle\" dominant-baseline=\"central\">" << xml_escape(c.type)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace combsub
