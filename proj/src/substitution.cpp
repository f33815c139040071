#include "combsub/substitution.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace combsub {

bool operator==(const ConcatenationRule& a, const ConcatenationRule& b) {
  return a.t == b.t && a.t_prime == b.t_prime && same_vector(a.u, b.u) && same_vector(a.v, b.v);
}

bool rule_less(const ConcatenationRule& a, const ConcatenationRule& b) {
  if (a.t != b.t) return symbol_less(a.t, b.t);
  if (a.t_prime != b.t_prime) return symbol_less(a.t_prime, b.t_prime);
  if (!same_vector(a.u, b.u)) return lattice_less(a.u, b.u);
  return lattice_less(a.v, b.v);
}

std::string format_rule(const ConcatenationRule& r) {
  return "(" + r.t + "," + r.t_prime + "," + format_vector(r.u) + ") -> " + format_vector(r.v);
}

bool Substitution::RuleKeyLess::operator()(const RuleKey& a, const RuleKey& b) const {
  if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
  if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
  return lattice_less(std::get<2>(a), std::get<2>(b));
}

Substitution::Substitution(std::vector<Symbol> alphabet, BaseRule base,
                           std::vector<ConcatenationRule> rules)
    : alphabet_(std::move(alphabet)), base_(std::move(base)), rules_(std::move(rules)) {
  std::sort(alphabet_.begin(), alphabet_.end(), symbol_less);
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());

  for (const auto& [sym, image] : base_) {
    if (image.dimension() != 0) {
      dimension_ = image.dimension();
      break;
    }
  }
  if (dimension_ == 0 && !rules_.empty()) dimension_ = static_cast<int>(rules_.front().u.size());

  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const ConcatenationRule& r = rules_[i];
    index_.emplace(RuleKey{r.t, r.t_prime, r.u}, i);
    moves_[r.t].push_back(Move{r.u, r.t_prime, r.v});
    moves_[r.t_prime].push_back(Move{-r.u, r.t, -r.v});
  }
}

bool Substitution::has_symbol(const Symbol& s) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), s, symbol_less);
}

const Pattern& Substitution::base_image(const Symbol& s) const {
  auto it = base_.find(s);
  if (it == base_.end()) throw Error("no base image for symbol " + s);
  return it->second;
}

const ConcatenationRule* Substitution::find_rule(const Symbol& t, const Symbol& t_prime,
                                                 const LatticeVector& u) const {
  auto it = index_.find(RuleKey{t, t_prime, u});
  return it == index_.end() ? nullptr : &rules_[it->second];
}

const std::vector<Move>& Substitution::moves(const Symbol& type) const {
  static const std::vector<Move> kNone;
  auto it = moves_.find(type);
  return it == moves_.end() ? kNone : it->second;
}

std::vector<ConcatenationRule> Substitution::canonical_rules() const {
  std::vector<ConcatenationRule> out = rules_;
  std::sort(out.begin(), out.end(), rule_less);
  return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
  return a.alphabet_ == b.alphabet_ && a.base_ == b.base_ &&
         a.canonical_rules() == b.canonical_rules();
}

InvalidSubstitution::InvalidSubstitution(std::vector<Violation> violations)
    : Error([&] {
        std::string msg = "invalid substitution:";
        for (const Violation& v : violations) msg += "\n  " + v.message;
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> validate(const Substitution& s) {
  std::vector<Violation> out;
  const int dim = s.dimension();

  for (const Symbol& a : s.alphabet()) {
    if (!is_valid_symbol(a))
      out.push_back({ViolationKind::invalid_symbol, "invalid symbol token '" + a + "'", {}, a});
    if (!s.base().count(a))
      out.push_back({ViolationKind::missing_base, "no base image for symbol " + a, {}, a});
  }
  for (const auto& [sym, image] : s.base()) {
    if (!s.has_symbol(sym))
      out.push_back({ViolationKind::unknown_symbol,
                     "base image given for symbol " + sym + " outside the alphabet", {}, sym});
    if (image.empty()) {
      out.push_back({ViolationKind::empty_base, "base image of " + sym + " is empty", {}, sym});
      continue;
    }
    if (image.dimension() != dim)
      out.push_back({ViolationKind::dimension_mismatch,
                     "base image of " + sym + " has dimension " +
                         std::to_string(image.dimension()) + ", expected " + std::to_string(dim),
                     {}, sym});
    for (const Cell& c : image) {
      if (!s.has_symbol(c.type))
        out.push_back({ViolationKind::unknown_symbol,
                       "base image of " + sym + " uses unknown symbol " + c.type, {}, sym});
    }
  }

  // Left-hand sides seen so far, keyed as given and in reversed form.
  std::map<std::tuple<Symbol, Symbol, LatticeVector>, std::size_t,
           std::function<bool(const std::tuple<Symbol, Symbol, LatticeVector>&,
                              const std::tuple<Symbol, Symbol, LatticeVector>&)>>
      seen([](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return lattice_less(std::get<2>(a), std::get<2>(b));
      });

  const auto& rules = s.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const ConcatenationRule& r = rules[i];
    for (const Symbol* sym : {&r.t, &r.t_prime}) {
      if (!s.has_symbol(*sym))
        out.push_back({ViolationKind::unknown_symbol,
                       "rule " + format_rule(r) + " uses unknown symbol " + *sym, {i}, {}});
    }
    if (r.u.size() != dim || r.v.size() != dim) {
      out.push_back({ViolationKind::dimension_mismatch,
                     "rule " + format_rule(r) + " does not have dimension " + std::to_string(dim),
                     {i}, {}});
      continue;
    }
    if (r.u.isZero()) {
      out.push_back(
          {ViolationKind::zero_offset, "rule " + format_rule(r) + " has u = 0", {i}, {}});
    }
    auto same = seen.find({r.t, r.t_prime, r.u});
    if (same != seen.end()) {
      out.push_back({ViolationKind::duplicate_rule,
                     "rule " + format_rule(r) + " repeats the left-hand side of " +
                         format_rule(rules[same->second]),
                     {same->second, i}, {}});
    } else {
      auto flipped = seen.find({r.t, r.t_prime, LatticeVector(-r.u)});
      if (flipped == seen.end()) flipped = seen.find({r.t_prime, r.t, LatticeVector(-r.u)});
      if (flipped != seen.end())
        out.push_back({ViolationKind::reverse_duplicate,
                       "rule " + format_rule(r) + " conflicts with " +
                           format_rule(rules[flipped->second]) + " (reversed left-hand side)",
                       {flipped->second, i}, {}});
    }
    seen.emplace(std::make_tuple(r.t, r.t_prime, r.u), i);
  }
  return out;
}

void require_valid(const Substitution& s) {
  auto violations = validate(s);
  if (!violations.empty()) throw InvalidSubstitution(std::move(violations));
}

namespace {

bool is_unit(const LatticeVector& v) {
  return v.size() == 2 && v.cwiseAbs().sum() == 1;
}

}  // namespace

bool is_domino_to_domino(const Substitution& s) {
  if (s.dimension() != 2) return false;
  for (const ConcatenationRule& r : s.rules()) {
    if (!is_unit(r.u) || !is_unit(r.v)) return false;
  }
  for (const auto& [sym, image] : s.base()) {
    if (image.size() != 1 || !image[0].vector.isZero()) return false;
  }
  return true;
}

std::vector<Pattern> starting_patterns(const Substitution& s) {
  std::vector<Pattern> out;
  for (const ConcatenationRule& r : s.rules()) {
    if (r.u.size() == 0 || r.u.isZero()) continue;
    Pattern p({Cell{zero_vector(static_cast<int>(r.u.size())), r.t}, Cell{r.u, r.t_prime}});
    // Canonical translate: least cell at the origin.
    out.push_back(translate(p, LatticeVector(-p[0].vector)));
  }
  auto less = [](const Pattern& a, const Pattern& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), cell_less);
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<LatticeVector> sigma_rule(const Substitution& s, const Cell& c,
                                        const Cell& c_prime) {
  require_same_dimension(c.vector, c_prime.vector);
  const LatticeVector d = c_prime.vector - c.vector;
  if (const ConcatenationRule* r = s.find_rule(c.type, c_prime.type, d)) return r->v;
  if (const ConcatenationRule* r = s.find_rule(c_prime.type, c.type, LatticeVector(-d)))
    return LatticeVector(-r->v);
  return std::nullopt;
}

std::string format_path(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (i) out += ' ';
    out += format_cell(p.cells[i]);
  }
  return out;
}

Path reversed(const Path& p) {
  return Path{std::vector<Cell>(p.cells.rbegin(), p.cells.rend())};
}

Path translate(const Path& p, const LatticeVector& v) {
  Path out;
  out.cells.reserve(p.size());
  for (const Cell& c : p.cells) out.cells.push_back(translate(c, v));
  return out;
}

bool is_valid_path(const Substitution& s, const Path& gamma, const Pattern* within) {
  if (gamma.cells.empty()) return false;
  std::map<LatticeVector, const Cell*, LatticeLess> seen;
  for (const Cell& c : gamma.cells) {
    auto [it, inserted] = seen.emplace(c.vector, &c);
    if (!inserted && *it->second != c) return false;
    if (within && !within->contains(c)) return false;
  }
  for (std::size_t i = 0; i + 1 < gamma.cells.size(); ++i) {
    if (gamma.cells[i].dimension() != gamma.cells[i + 1].dimension()) return false;
    if (!sigma_rule(s, gamma.cells[i], gamma.cells[i + 1])) return false;
  }
  return true;
}

LatticeVector image_vector(const Substitution& s, const Path& gamma) {
  if (gamma.cells.empty()) throw PathError("empty path");
  LatticeVector total = zero_vector(gamma.cells.front().dimension());
  for (std::size_t i = 0; i + 1 < gamma.cells.size(); ++i) {
    auto step = sigma_rule(s, gamma.cells[i], gamma.cells[i + 1]);
    if (!step)
      throw PathError("no concatenation rule for the pair " + format_cell(gamma.cells[i]) + ", " +
                      format_cell(gamma.cells[i + 1]));
    total += *step;
  }
  return total;
}

std::size_t CoverGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency) n += adj.size();
  return n / 2;
}

std::vector<std::size_t> CoverGraph::components(std::size_t* count) const {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(adjacency.size(), kUnset);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < adjacency.size(); ++start) {
    if (comp[start] != kUnset) continue;
    comp[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const CoverEdge& e : adjacency[v]) {
        if (comp[e.neighbour] == kUnset) {
          comp[e.neighbour] = next;
          stack.push_back(e.neighbour);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

CoverGraph cover_graph(const Substitution& s, const Pattern& p) {
  CoverGraph g;
  g.adjacency.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Cell& c = p[i];
    auto& adj = g.adjacency[i];
    for (const Move& m : s.moves(c.type)) {
      if (m.offset.size() != c.vector.size()) continue;
      auto j = p.find(c.vector + m.offset);
      if (!j || p[*j].type != m.other) continue;
      if (std::any_of(adj.begin(), adj.end(), [&](const CoverEdge& e) { return e.neighbour == *j; }))
        continue;
      // sigma_rule settles which rule wins if both orientations are present.
      adj.push_back(CoverEdge{*j, *sigma_rule(s, c, p[*j])});
    }
    std::sort(adj.begin(), adj.end(),
              [](const CoverEdge& a, const CoverEdge& b) { return a.neighbour < b.neighbour; });
  }
  return g;
}

bool is_covered(const Substitution& s, const Pattern& p) {
  if (p.size() <= 1) return true;
  std::size_t count = 0;
  cover_graph(s, p).components(&count);
  return count == 1;
}

SpanningTree bfs_tree(const CoverGraph& g, std::size_t root, int dimension) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  SpanningTree t;
  t.root = root;
  t.parent.assign(g.vertex_count(), kUnset);
  t.depth.assign(g.vertex_count(), 0);
  t.potential.assign(g.vertex_count(), zero_vector(dimension));
  std::deque<std::size_t> queue{root};
  t.parent[root] = root;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const CoverEdge& e : g.adjacency[v]) {
      if (t.parent[e.neighbour] != kUnset) continue;
      t.parent[e.neighbour] = v;
      t.depth[e.neighbour] = t.depth[v] + 1;
      t.potential[e.neighbour] = t.potential[v] + e.label;
      queue.push_back(e.neighbour);
    }
  }
  return t;
}

std::vector<std::size_t> tree_path(const SpanningTree& tree, std::size_t from, std::size_t to) {
  std::vector<std::size_t> up{from}, down{to};
  std::size_t a = from, b = to;
  while (tree.depth[a] > tree.depth[b]) up.push_back(a = tree.parent[a]);
  while (tree.depth[b] > tree.depth[a]) down.push_back(b = tree.parent[b]);
  while (a != b) {
    up.push_back(a = tree.parent[a]);
    down.push_back(b = tree.parent[b]);
  }
  // `up` ends at the common ancestor, `down` does too.
  down.pop_back();
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

namespace {

Path cells_of(const Pattern& p, const std::vector<std::size_t>& idx) {
  Path out;
  out.cells.reserve(idx.size());
  for (std::size_t i : idx) out.cells.push_back(p[i]);
  return out;
}

struct Potentials {
  CoverGraph graph;
  SpanningTree tree;
};

Potentials covered_tree(const Substitution& s, const Pattern& p, std::size_t root) {
  Potentials out{cover_graph(s, p), {}};
  std::size_t count = 0;
  out.graph.components(&count);
  if (count > 1)
    throw NotCovered("pattern is not covered by the starting patterns (" + std::to_string(count) +
                     " components)");
  out.tree = bfs_tree(out.graph, root, p.dimension());
  return out;
}

}  // namespace

ConsistencyVerdict check_consistent_on(const Substitution& s, const Pattern& p) {
  if (p.empty()) return Consistent{};
  const Potentials pt = covered_tree(s, p, 0);
  const SpanningTree& tree = pt.tree;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (const CoverEdge& e : pt.graph.adjacency[i]) {
      const std::size_t j = e.neighbour;
      if (j < i) continue;
      if (tree.potential[j] - tree.potential[i] == e.label) continue;
      // Fundamental loop: ancestor -> i, edge i -> j, j -> ancestor.
      std::vector<std::size_t> to_j = tree_path(tree, j, tree.root);
      std::vector<std::size_t> to_i = tree_path(tree, tree.root, i);
      // Trim to the lowest common ancestor.
      std::set<std::size_t> above_j(to_j.begin(), to_j.end());
      std::size_t start = 0;
      while (start + 1 < to_i.size() && above_j.count(to_i[start + 1])) ++start;
      std::vector<std::size_t> loop(to_i.begin() + static_cast<std::ptrdiff_t>(start), to_i.end());
      const std::size_t ancestor = to_i[start];
      for (std::size_t v : to_j) {
        loop.push_back(v);
        if (v == ancestor) break;
      }
      Path witness = cells_of(p, loop);
      LatticeVector value = image_vector(s, witness);
      return Inconsistent{std::move(witness), std::move(value)};
    }
  }
  Consistent out{p[0], {}};
  for (std::size_t i = 0; i < p.size(); ++i) out.potential.emplace(p[i].vector, tree.potential[i]);
  return out;
}

OverlapVerdict check_nonoverlapping_on(const Substitution& s, const Pattern& p) {
  if (p.empty()) return NonOverlapping{};
  auto verdict = check_consistent_on(s, p);
  if (auto* bad = std::get_if<Inconsistent>(&verdict))
    throw InconsistentInput("substitution is not consistent on the pattern: loop " +
                            format_path(bad->loop) + " has image vector " +
                            format_vector(bad->image_vector));
  const Potentials pt = covered_tree(s, p, 0);
  const auto& pot = pt.tree.potential;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Pattern& first = s.base_image(p[i].type);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const LatticeVector offset = pot[j] - pot[i];
      const Pattern& second = s.base_image(p[j].type);
      std::optional<LatticeVector> hit;
      for (const Cell& b : second) {
        LatticeVector where = b.vector + offset;
        if (first.find(where) && (!hit || lattice_less(where, *hit))) hit = where;
      }
      if (hit) return Overlapping{p[i], p[j], cells_of(p, tree_path(pt.tree, i, j)), *hit};
    }
  }
  return NonOverlapping{};
}

OverlapCollision::OverlapCollision(Cell first, Cell second, LatticeVector position)
    : Error("images of " + format_cell(first) + " and " + format_cell(second) + " overlap at " +
            format_vector(position)),
      first_(std::move(first)),
      second_(std::move(second)),
      position_(std::move(position)) {}

Pattern apply(const Substitution& s, const Pattern& p, const Cell& c0) {
  if (p.empty()) return Pattern{};
  auto root = p.find(c0.vector);
  if (!root || p[*root].type != c0.type)
    throw Error("start cell " + format_cell(c0) + " is not in the pattern");
  const Potentials pt = covered_tree(s, p, *root);
  std::vector<Pattern> parts;
  parts.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    parts.push_back(translate(s.base_image(p[i].type), pt.tree.potential[i]));
  auto merged = merge_checked(parts);
  if (auto* c = std::get_if<Collision>(&merged))
    throw OverlapCollision(p[c->first_part], p[c->second_part], c->vector);
  return std::get<Pattern>(std::move(merged));
}

IterationError::IterationError(std::size_t step, const std::string& what,
                               std::vector<Pattern> partial)
    : Error("iterate " + std::to_string(step) + ": " + what),
      step_(step),
      partial_(std::move(partial)) {}

const Cell& choose_root(const Pattern& p, const RootPolicy& policy) {
  if (p.empty()) throw Error("empty pattern has no root cell");
  if (policy.at) {
    if (const Cell* c = p.cell_at(*policy.at)) return *c;
  }
  return p[0];
}

std::vector<Pattern> iterate(const Substitution& s, const Pattern& p, std::size_t k,
                             const RootPolicy& policy) {
  std::vector<Pattern> out{p};
  for (std::size_t step = 1; step <= k; ++step) {
    const Pattern& current = out.back();
    if (current.empty()) {
      out.push_back(Pattern{});
      continue;
    }
    try {
      Pattern next = apply(s, current, choose_root(current, policy));
      out.push_back(std::move(next));
    } catch (const Error& e) {
      throw IterationError(step, e.what(), out);
    }
  }
  return out;
}

std::vector<LoopValue> enumerate_simple_loops(const Substitution& s, const Pattern& p,
                                              std::size_t max_len, std::size_t guard) {
  if (p.size() > guard)
    throw Error("loop enumeration guard exceeded: " + std::to_string(p.size()) + " cells > " +
                std::to_string(guard));
  std::vector<LoopValue> out;
  if (p.empty()) return out;
  const int dim = p.dimension();
  for (const Cell& c : p) out.push_back(LoopValue{Path{{c}}, zero_vector(dim)});

  const CoverGraph g = cover_graph(s, p);
  std::vector<std::size_t> path;
  std::vector<bool> on_path(p.size(), false);
  std::vector<LatticeVector> value;  // value[k] = image vector of path[0..k]

  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    const std::size_t v = path.back();
    for (const CoverEdge& e : g.adjacency[v]) {
      const std::size_t w = e.neighbour;
      if (w == start) {
        // Each cycle once: at least three cells, one orientation.
        if (path.size() >= 3 && path.size() + 1 <= max_len && path[1] < path.back()) {
          Path loop = cells_of(p, path);
          loop.cells.push_back(p[start]);
          out.push_back(LoopValue{std::move(loop), LatticeVector(value.back() + e.label)});
        }
        continue;
      }
      if (w < start || on_path[w] || path.size() + 2 > max_len) continue;
      path.push_back(w);
      on_path[w] = true;
      value.push_back(value.back() + e.label);
      extend(start);
      value.pop_back();
      on_path[w] = false;
      path.pop_back();
    }
  };

  for (std::size_t start = 0; start < p.size(); ++start) {
    path = {start};
    on_path.assign(p.size(), false);
    on_path[start] = true;
    value = {zero_vector(dim)};
    extend(start);
  }
  return out;
}

}  // namespace combsub
