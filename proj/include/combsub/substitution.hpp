#pragma once

#include "combsub/lattice.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace combsub {

/// (t, t', u) -> v: cells of types t, t' separated by u have their images
/// separated by v.
struct ConcatenationRule {
  Symbol t;
  Symbol t_prime;
  LatticeVector u;
  LatticeVector v;
};

bool operator==(const ConcatenationRule& a, const ConcatenationRule& b);
/// Order on the left-hand side (t, t', u), then v.
bool rule_less(const ConcatenationRule& a, const ConcatenationRule& b);
std::string format_rule(const ConcatenationRule& r);

/// A neighbour reachable from a cell of some type: the cell at `offset` with
/// type `other` gives sigma_rule = `value`. Both orientations of every rule
/// appear in the table.
struct Move {
  LatticeVector offset;
  Symbol other;
  LatticeVector value;
};

/// Base rule plus concatenation rules. Construction does not enforce the
/// invariants; run validate() (or require_valid()) on untrusted data. Rules
/// keep their input order so diagnostics can point back at the source.
class Substitution {
 public:
  using BaseRule = std::map<Symbol, Pattern, SymbolLess>;

  Substitution() = default;
  Substitution(std::vector<Symbol> alphabet, BaseRule base, std::vector<ConcatenationRule> rules);

  /// Sorted by symbol_less, duplicates removed.
  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  const BaseRule& base() const { return base_; }
  const std::vector<ConcatenationRule>& rules() const { return rules_; }

  bool has_symbol(const Symbol& s) const;
  /// Throws Error for symbols without a base image.
  const Pattern& base_image(const Symbol& s) const;
  /// Dimension of the first vector found in the base rule or the rules; 0 if none.
  int dimension() const { return dimension_; }

  /// The rule with left-hand side exactly (t, t', u), if any.
  const ConcatenationRule* find_rule(const Symbol& t, const Symbol& t_prime,
                                     const LatticeVector& u) const;
  /// Both orientations of every rule whose t or t' equals `type`.
  const std::vector<Move>& moves(const Symbol& type) const;

  /// Rules sorted by rule_less.
  std::vector<ConcatenationRule> canonical_rules() const;

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  using RuleKey = std::tuple<Symbol, Symbol, LatticeVector>;
  struct RuleKeyLess {
    bool operator()(const RuleKey& a, const RuleKey& b) const;
  };

  std::vector<Symbol> alphabet_;
  BaseRule base_;
  std::vector<ConcatenationRule> rules_;
  int dimension_ = 0;
  std::map<RuleKey, std::size_t, RuleKeyLess> index_;
  std::map<Symbol, std::vector<Move>, SymbolLess> moves_;
};

enum class ViolationKind {
  missing_base,
  empty_base,
  unknown_symbol,
  zero_offset,
  duplicate_rule,
  reverse_duplicate,
  dimension_mismatch,
  invalid_symbol,
};

struct Violation {
  ViolationKind kind;
  std::string message;
  /// Indices into Substitution::rules() involved, in input order.
  std::vector<std::size_t> rules;
  /// Symbol whose base entry is involved, when applicable.
  std::optional<Symbol> symbol;
};

std::vector<Violation> validate(const Substitution& s);

class InvalidSubstitution : public Error {
 public:
  InvalidSubstitution(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws InvalidSubstitution when validate() reports anything.
void require_valid(const Substitution& s);

/// Every rule has a unit u and v and every base image is the single cell at the origin.
bool is_domino_to_domino(const Substitution& s);

/// {[0,t],[u,t']} per rule, canonically ordered, duplicates removed.
std::vector<Pattern> starting_patterns(const Substitution& s);

/// v for a rule (t, t', u'-u), -v for a rule (t', t, u-u'), absent otherwise.
std::optional<LatticeVector> sigma_rule(const Substitution& s, const Cell& c, const Cell& c_prime);

/// Cells c_1..c_n; a loop repeats its first cell at the end.
struct Path {
  std::vector<Cell> cells;

  std::size_t size() const { return cells.size(); }
  bool is_loop() const { return !cells.empty() && cells.front() == cells.back(); }
};

std::string format_path(const Path& p);
Path reversed(const Path& p);
Path translate(const Path& p, const LatticeVector& v);

bool is_valid_path(const Substitution& s, const Path& gamma,
                   const Pattern* within = nullptr);

class PathError : public Error {
 public:
  using Error::Error;
};

/// Sum of sigma_rule over consecutive pairs; PathError names the first pair
/// without a rule. A single-cell path gives the zero vector.
LatticeVector image_vector(const Substitution& s, const Path& gamma);

struct CoverEdge {
  std::size_t neighbour;  // index into the pattern
  LatticeVector label;    // sigma_rule(this cell, neighbour)
};

/// Vertices are pattern indices (lexicographic vector order); adjacency lists
/// are sorted by neighbour index.
struct CoverGraph {
  std::vector<std::vector<CoverEdge>> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  /// Component id per vertex, numbered in order of the least vertex.
  std::vector<std::size_t> components(std::size_t* count = nullptr) const;
};

CoverGraph cover_graph(const Substitution& s, const Pattern& p);
bool is_covered(const Substitution& s, const Pattern& p);

/// Breadth-first spanning tree of a connected cover graph. Neighbours are
/// visited in lexicographic order, so the tree is deterministic.
struct SpanningTree {
  std::size_t root = 0;
  std::vector<std::size_t> parent;         // parent[root] == root
  std::vector<std::size_t> depth;
  std::vector<LatticeVector> potential;    // image vector of the tree path from root
};

SpanningTree bfs_tree(const CoverGraph& g, std::size_t root, int dimension);
/// Tree path between two vertices as pattern indices.
std::vector<std::size_t> tree_path(const SpanningTree& tree, std::size_t from, std::size_t to);

class NotCovered : public Error {
 public:
  using Error::Error;
};

class InconsistentInput : public Error {
 public:
  using Error::Error;
};

struct Consistent {
  Cell root;
  /// Image vector of any path from the root to the cell at each vector.
  std::map<LatticeVector, LatticeVector, LatticeLess> potential;
};

struct Inconsistent {
  Path loop;
  LatticeVector image_vector;
};

using ConsistencyVerdict = std::variant<Consistent, Inconsistent>;

/// Spanning-tree potentials plus a check of every non-tree edge. On failure the
/// witness is the fundamental loop of the first violating edge, oriented from
/// the branching cell through the lexicographically smaller endpoint.
ConsistencyVerdict check_consistent_on(const Substitution& s, const Pattern& p);

struct NonOverlapping {};

struct Overlapping {
  Cell first;
  Cell second;
  /// Path from first to second realizing the placement.
  Path path;
  /// Vector of supp(base(first)) hit by the translated supp(base(second)).
  LatticeVector collision_vector;
};

using OverlapVerdict = std::variant<NonOverlapping, Overlapping>;

/// Requires consistency on p (InconsistentInput otherwise).
OverlapVerdict check_nonoverlapping_on(const Substitution& s, const Pattern& p);

class OverlapCollision : public Error {
 public:
  OverlapCollision(Cell first, Cell second, LatticeVector position);
  const Cell& first() const { return first_; }
  const Cell& second() const { return second_; }
  /// Position in the image claimed by both cells.
  const LatticeVector& position() const { return position_; }

 private:
  Cell first_;
  Cell second_;
  LatticeVector position_;
};

/// Union of base(c) + omega(gamma_c) over a BFS tree rooted at c0; the image of
/// c0 is placed at the origin.
Pattern apply(const Substitution& s, const Pattern& p, const Cell& c0);

/// Which cell serves as the root of each iterate.
struct RootPolicy {
  /// When set, the cell at this vector if the iterate has one; otherwise the
  /// lexicographically least cell.
  std::optional<LatticeVector> at;
};

class IterationError : public Error {
 public:
  IterationError(std::size_t step, const std::string& what, std::vector<Pattern> partial);
  /// 1-based index of the iterate that could not be computed.
  std::size_t step() const { return step_; }
  const std::vector<Pattern>& partial() const { return partial_; }

 private:
  std::size_t step_;
  std::vector<Pattern> partial_;
};

const Cell& choose_root(const Pattern& p, const RootPolicy& policy);

/// P, s(P), ..., s^k(P).
std::vector<Pattern> iterate(const Substitution& s, const Pattern& p, std::size_t k,
                             const RootPolicy& policy = {});

struct LoopValue {
  Path loop;
  LatticeVector value;
};

/// Every simple loop of p with at most max_len entries (closing repeat
/// included), each cycle once, plus the trivial single-cell loops.
/// Exhaustive; throws Error when p has more than `guard` cells.
std::vector<LoopValue> enumerate_simple_loops(const Substitution& s, const Pattern& p,
                                              std::size_t max_len, std::size_t guard = 16);

}  // namespace combsub
