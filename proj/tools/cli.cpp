#include "cli.hpp"

#include "combsub/corpus.hpp"
#include "combsub/decide.hpp"
#include "combsub/io.hpp"
#include "combsub/wang.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

namespace combsub {

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

struct Options {
  std::string subst;
  std::string pattern;
  std::string pattern_opt;
  bool domino_complete = false;
  std::string restricted;
  bool global = false;
  std::string origin;
  std::size_t iterations = 1;
  std::string out_file;
  std::string svg;
  int cell_size = 20;
  bool no_labels = false;
  std::string tiles;
  std::vector<std::string> overlap_pair;
  std::size_t max_cells = 0;
  std::string name;
  std::string out_dir;
};

Document load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

Substitution load_substitution(const std::string& path) {
  Document doc = load(path);
  if (!doc.has_substitution) throw Error(path + ": no substitution in file");
  return std::move(doc.substitution);
}

Pattern load_pattern(const std::string& path) {
  Document doc = load(path);
  if (doc.patterns.empty()) throw Error(path + ": no pattern block in file");
  return std::move(doc.patterns.front().pattern);
}

LatticeVector parse_origin(const std::string& text) {
  Document doc = parse_document_unchecked("pattern\ncell (" + text + ") x\n");
  return doc.patterns.front().pattern[0].vector;
}

void print_path(std::ostream& out, const std::string& key, const Path& p) {
  out << key << ": " << format_path(p) << '\n';
}

int cmd_validate(const Options& o, std::ostream& out) {
  Document doc;
  try {
    doc = parse_document_unchecked(read_file(o.subst));
  } catch (const ParseError& e) {
    throw Error(o.subst + ": " + e.what());
  }
  if (!doc.has_substitution) throw Error(o.subst + ": no substitution in file");
  const Substitution& s = doc.substitution;
  auto violations = validate(s);
  for (const std::string& line : describe_violations(doc, violations))
    out << "violation: " << line << '\n';
  out << "symbols: " << s.alphabet().size() << '\n';
  out << "rules: " << s.rules().size() << '\n';
  out << "dimension: " << s.dimension() << '\n';
  out << "valid: " << (violations.empty() ? "yes" : "no") << '\n';
  if (!violations.empty()) return kFails;
  out << "domino-to-domino: " << (is_domino_to_domino(s) ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_coverage(const Options& o, std::ostream& out) {
  const Substitution s = load_substitution(o.subst);
  const Pattern p = load_pattern(o.pattern);
  const CoverGraph g = cover_graph(s, p);
  std::size_t count = 0;
  const auto comp = g.components(&count);
  out << "cells: " << p.size() << '\n';
  out << "edges: " << g.edge_count() << '\n';
  out << "components: " << count << '\n';
  const bool covered = count <= 1;
  out << "covered: " << (covered ? "yes" : "no") << '\n';
  if (!covered) {
    for (std::size_t c = 0; c < count; ++c) {
      out << "component " << c << ":";
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (comp[i] == c) out << ' ' << format_cell(p[i]);
      }
      out << '\n';
    }
  }
  return covered ? kOk : kFails;
}

int report_square(const SquareVerdict& v, std::ostream& out) {
  out << "consistent: " << (v.consistent ? "yes" : "no") << '\n';
  if (v.consistent) return kOk;
  out << "square: " << format_square(*v.witness) << '\n';
  print_path(out, "loop", *v.loop);
  out << "image-vector: " << format_vector(v.image_vector) << '\n';
  return kFails;
}

int report_not_covered(const NotCovered& e, std::ostream& out, std::ostream& err) {
  out << "covered: no\n";
  err << "error: " << e.what() << '\n';
  return kFails;
}

int cmd_consistency(const Options& o, std::ostream& out, std::ostream& err) {
  const int modes = !o.pattern_opt.empty() + o.domino_complete + !o.restricted.empty();
  if (modes != 1) {
    err << "error: give exactly one of --pattern, --domino-complete, --restricted\n";
    return kUsage;
  }
  const Substitution s = load_substitution(o.subst);
  if (o.domino_complete) return report_square(check_consistency_domino_complete(s), out);
  if (!o.restricted.empty()) {
    Document squares = load(o.restricted);
    std::vector<Pattern> list;
    for (NamedPattern& p : squares.patterns) list.push_back(std::move(p.pattern));
    out << "squares: " << list.size() << '\n';
    return report_square(check_consistency_restricted(s, list), out);
  }
  const Pattern p = load_pattern(o.pattern_opt);
  try {
    auto verdict = check_consistent_on(s, p);
    if (auto* bad = std::get_if<Inconsistent>(&verdict)) {
      out << "consistent: no\n";
      print_path(out, "loop", bad->loop);
      out << "image-vector: " << format_vector(bad->image_vector) << '\n';
      return kFails;
    }
    const auto& good = std::get<Consistent>(verdict);
    out << "consistent: yes\n";
    out << "cells: " << p.size() << '\n';
    if (!p.empty()) {
      out << "root: " << format_cell(good.root) << '\n';
      for (const Cell& c : p)
        out << "potential: " << format_cell(c) << ' ' << format_vector(good.potential.at(c.vector))
            << '\n';
    }
    return kOk;
  } catch (const NotCovered& e) {
    return report_not_covered(e, out, err);
  }
}

int cmd_overlap(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.global == !o.pattern_opt.empty()) {
    err << "error: give exactly one of --pattern, --global\n";
    return kUsage;
  }
  const Substitution s = load_substitution(o.subst);
  if (o.global) {
    auto decision = decide_overlap(s);
    if (std::holds_alternative<GloballyNonOverlapping>(decision)) {
      out << "overlapping: no\n";
      return kOk;
    }
    const auto& w = std::get<OverlapWitness>(decision);
    out << "overlapping: yes\n";
    out << "witness: t=" << w.t << " t'=" << w.t_prime << " a=" << format_vector(w.a)
        << " b=" << format_vector(w.b) << " x=" << w.xy(0) << " y=" << w.xy(1) << '\n';
    return kFails;
  }
  const Pattern p = load_pattern(o.pattern_opt);
  try {
    auto verdict = check_nonoverlapping_on(s, p);
    if (std::holds_alternative<NonOverlapping>(verdict)) {
      out << "overlapping: no\n";
      return kOk;
    }
    const auto& w = std::get<Overlapping>(verdict);
    out << "overlapping: yes\n";
    out << "first: " << format_cell(w.first) << '\n';
    out << "second: " << format_cell(w.second) << '\n';
    print_path(out, "path", w.path);
    out << "collision: " << format_vector(w.collision_vector) << '\n';
    return kFails;
  } catch (const NotCovered& e) {
    return report_not_covered(e, out, err);
  } catch (const InconsistentInput& e) {
    out << "consistent: no\n";
    err << "error: " << e.what() << '\n';
    return kFails;
  }
}

int cmd_structure(const Options& o, std::ostream& out) {
  const Substitution s = load_substitution(o.subst);
  const StructureData sd = extract_structure(s);
  out << "t0: " << sd.t0 << '\n';
  out << "alpha: " << format_vector(sd.alpha) << '\n';
  out << "beta: " << format_vector(sd.beta) << '\n';
  for (const auto& [t, v] : sd.v) out << "v(" << t << "): " << format_vector(v) << '\n';
  return kOk;
}

int cmd_apply(const Options& o, std::ostream& out, std::ostream& err) {
  const Substitution s = load_substitution(o.subst);
  Pattern current = load_pattern(o.pattern);
  RootPolicy policy;
  if (!o.origin.empty()) {
    policy.at = parse_origin(o.origin);
    if (!current.cell_at(*policy.at)) {
      err << "error: no cell at " << format_vector(*policy.at) << " in " << o.pattern << '\n';
      return kUsage;
    }
  }
  std::ostringstream log;
  for (std::size_t step = 1; step <= o.iterations; ++step) {
    if (current.empty()) {
      log << "# iterate " << step << ": 0 cells\n";
      continue;
    }
    const Cell root = choose_root(current, policy);
    try {
      current = apply(s, current, root);
    } catch (const OverlapCollision& e) {
      out << log.str();
      out << "iterate: " << step << '\n';
      out << "collision: " << format_cell(e.first()) << ' ' << format_cell(e.second()) << " at "
          << format_vector(e.position()) << '\n';
      return kFails;
    } catch (const NotCovered& e) {
      out << log.str();
      out << "iterate: " << step << '\n';
      return report_not_covered(e, out, err);
    }
    log << "# iterate " << step << ": " << current.size() << " cells, root "
        << format_cell(root) << '\n';
  }
  const std::string text = serialize_pattern(current, "image");
  if (o.out_file.empty()) {
    out << log.str() << text;
  } else {
    write_file(o.out_file, log.str() + text);
    out << "iterations: " << o.iterations << '\n';
    out << "cells: " << current.size() << '\n';
    out << "wrote: " << o.out_file << '\n';
  }
  return kOk;
}

int cmd_render(const Options& o, std::ostream& out) {
  const Pattern p = load_pattern(o.pattern);
  RenderStyle style;
  style.cell_size = o.cell_size;
  style.label = !o.no_labels;
  write_file(o.svg, render_svg(p, style));
  out << "cells: " << p.size() << '\n';
  out << "wrote: " << o.svg << '\n';
  return kOk;
}

WangTileSet load_tiles(const std::string& path) {
  Document doc = load(path);
  if (doc.tiles.tiles.empty()) throw Error(path + ": no tile lines in file");
  return std::move(doc.tiles);
}

int cmd_wang_reduce(const Options& o, std::ostream& out, std::ostream& err) {
  const WangTileSet tiles = load_tiles(o.tiles);
  std::string header;
  Substitution s;
  if (!o.overlap_pair.empty()) {
    auto a = tiles.index_of(o.overlap_pair[0]);
    auto b = tiles.index_of(o.overlap_pair[1]);
    if (!a || !b) {
      err << "error: unknown tile " << (a ? o.overlap_pair[1] : o.overlap_pair[0]) << '\n';
      return kUsage;
    }
    OverlapReduction r = build_overlap_reduction(tiles, *a, *b);
    header = "# a0: " + r.a0 + "\n# b0: " + r.b0 + "\n";
    s = std::move(r.substitution);
  } else {
    s = build_consistency_reduction(tiles);
  }
  const std::string text = header + serialize_substitution(s);
  if (o.out_file.empty()) {
    out << text;
  } else {
    write_file(o.out_file, text);
    out << "symbols: " << s.alphabet().size() << '\n';
    out << "rules: " << s.rules().size() << '\n';
    out << "wrote: " << o.out_file << '\n';
  }
  return kOk;
}

int cmd_wang_cycle(const Options& o, std::ostream& out) {
  const WangTileSet tiles = load_tiles(o.tiles);
  CycleSearchStats stats;
  auto cycle = find_cycle(tiles, o.max_cells, &stats);
  out << "searched: " << stats.nodes << " nodes\n";
  if (!cycle) {
    out << "cycle: none within " << o.max_cells << " cells\n";
    return kFails;
  }
  out << "cycle: found\n";
  out << "length: " << cycle->size() << '\n';
  for (const Placement& p : cycle->placements)
    out << "placement: (" << p.position(0) << "," << p.position(1) << ") " << tiles[p.tile].name
        << '\n';
  const Path loop = arrow_loop(tiles, *cycle);
  print_path(out, "arrow-loop", loop);
  out << "image-vector: " << format_vector(image_vector(build_consistency_reduction(tiles), loop))
      << '\n';
  return kOk;
}

std::string example_document(const NamedExample& ex) {
  std::string text;
  for (const std::string& tag : ex.tags) text += "# tag: " + tag + "\n";
  if (ex.substitution) text += serialize_substitution(*ex.substitution);
  for (const NamedPattern& p : ex.patterns) text += "\n" + serialize_pattern(p.pattern, p.name);
  return text;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  if (o.name == "list") {
    for (const std::string& n : example_names()) out << "example: " << n << '\n';
    for (const std::string& n : fixture_names()) out << "fixture: " << n << '\n';
    return kOk;
  }
  std::string text;
  const auto names = example_names();
  const bool is_example = std::find(names.begin(), names.end(), o.name) != names.end() ||
                          o.name.rfind("overlapfar(", 0) == 0;
  if (is_example)
    text = example_document(example(o.name));
  else
    text = std::string(fixture_text(o.name));

  if (o.out_dir.empty()) {
    out << text;
    return kOk;
  }
  std::string file = o.name;
  file.erase(std::remove(file.begin(), file.end(), ')'), file.end());
  std::replace(file.begin(), file.end(), '(', '-');
  std::filesystem::create_directories(o.out_dir);
  const std::string path = (std::filesystem::path(o.out_dir) / file).string();
  write_file(path, text);
  out << "wrote: " << path << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial substitutions: images, consistency, overlap, Wang reductions",
               "combsub"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "check the substitution invariants");
  validate_cmd->add_option("subst", o.subst, "substitution file")->required();

  auto* coverage = app.add_subcommand("coverage", "is the pattern covered by starting patterns");
  coverage->add_option("subst", o.subst)->required();
  coverage->add_option("pattern", o.pattern)->required();

  auto* consistency = app.add_subcommand("consistency", "consistency on a pattern or globally");
  consistency->add_option("subst", o.subst)->required();
  consistency->add_option("--pattern", o.pattern_opt, "check on this pattern");
  consistency->add_flag("--domino-complete", o.domino_complete, "2x2 square sweep");
  consistency->add_option("--restricted", o.restricted, "check on these 2x2 squares");

  auto* overlap = app.add_subcommand("overlap", "overlap on a pattern or globally");
  overlap->add_option("subst", o.subst)->required();
  overlap->add_option("--pattern", o.pattern_opt, "check on this pattern");
  overlap->add_flag("--global", o.global, "decide for domino-complete substitutions");

  auto* structure = app.add_subcommand("structure", "alpha, beta and v_t");
  structure->add_option("subst", o.subst)->required();

  auto* apply_cmd = app.add_subcommand("apply", "image of a pattern");
  apply_cmd->add_option("subst", o.subst)->required();
  apply_cmd->add_option("pattern", o.pattern)->required();
  apply_cmd->add_option("--origin", o.origin, "start cell vector, x,y");
  apply_cmd->add_option("--iterations", o.iterations, "number of iterates")->check(CLI::NonNegativeNumber);
  apply_cmd->add_option("--out", o.out_file, "write the image here");

  auto* render = app.add_subcommand("render", "draw a pattern as SVG");
  render->add_option("pattern", o.pattern)->required();
  render->add_option("--svg", o.svg, "output file")->required();
  render->add_option("--cell-size", o.cell_size, "pixels per cell")->check(CLI::PositiveNumber);
  render->add_flag("--no-labels", o.no_labels, "omit cell labels");

  auto* wang = app.add_subcommand("wang", "Wang tile reductions");
  wang->require_subcommand(1);
  auto* reduce = wang->add_subcommand("reduce", "build a reduction substitution");
  reduce->add_option("tiles", o.tiles)->required();
  reduce->add_option("--overlap", o.overlap_pair, "tiles a b for the overlap reduction")->expected(2);
  reduce->add_option("--out", o.out_file, "write the substitution here");
  auto* cycle = wang->add_subcommand("cycle", "bounded search for a tile cycle");
  cycle->add_option("tiles", o.tiles)->required();
  cycle->add_option("--max-cells", o.max_cells, "search bound")->required()->check(CLI::Range(4, 64));

  auto* corpus = app.add_subcommand("corpus", "print or export a built-in example");
  corpus->add_option("name", o.name, "example or fixture name, or list")->required();
  corpus->add_option("--out-dir", o.out_dir, "write the example here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*coverage) return cmd_coverage(o, out);
    if (*consistency) return cmd_consistency(o, out, err);
    if (*overlap) return cmd_overlap(o, out, err);
    if (*structure) return cmd_structure(o, out);
    if (*apply_cmd) return cmd_apply(o, out, err);
    if (*render) return cmd_render(o, out);
    if (*reduce) return cmd_wang_reduce(o, out, err);
    if (*cycle) return cmd_wang_cycle(o, out);
    if (*corpus) return cmd_corpus(o, out);
  } catch (const NotCovered& e) {
    return report_not_covered(e, out, err);
  } catch (const OverlapCollision& e) {
    out << "collision: " << format_cell(e.first()) << ' ' << format_cell(e.second()) << " at "
        << format_vector(e.position()) << '\n';
    return kFails;
  } catch (const InconsistentInput& e) {
    err << "error: " << e.what() << '\n';
    return kFails;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace combsub
