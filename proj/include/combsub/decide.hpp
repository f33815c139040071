#pragma once

#include "combsub/diophantine.hpp"
#include "combsub/substitution.hpp"

#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace combsub {

class MalformedSquare : public Error {
 public:
  using Error::Error;
};

/// Types of a unit square: bottom-left, bottom-right, top-left, top-right.
struct Square {
  Symbol bl, br, tl, tr;

  friend bool operator==(const Square&, const Square&) = default;
};

std::string format_square(const Square& q);
/// The square with its bottom-left cell at `origin`.
Pattern to_pattern(const Square& q, const Vector2& origin = Vector2::Zero());
/// Throws MalformedSquare unless p is a full 2x2 block.
Square square_of(const Pattern& p);
/// Bottom, top, left and right dominoes.
std::vector<Domino> dominoes_of(const Square& q);
/// All |A|^4 squares, ordered by (bl, br, tl, tr).
std::vector<Square> all_squares(const std::vector<Symbol>& alphabet);

/// sigma_rule of the horizontal (left, right) or vertical (bottom, top) domino.
std::optional<LatticeVector> domino_vector(const Substitution& s, const Domino& d);

struct DominoReport {
  bool complete = false;
  std::vector<Domino> missing;
};

DominoReport is_domino_complete(const Substitution& s);

struct RestrictedReport {
  bool complete = false;
  /// Dominoes of the squares without a rule.
  std::vector<Domino> missing;
  /// Starting patterns (canonical translates) that occur in no square.
  std::vector<Pattern> extra;
};

RestrictedReport is_restricted_domino_complete(const Substitution& s,
                                               const std::vector<Pattern>& squares);

struct SquareVerdict {
  bool consistent = true;
  std::optional<Square> witness;
  /// bl -> br -> tr -> tl -> bl, bottom-left cell at the origin.
  std::optional<Path> loop;
  LatticeVector image_vector;
};

/// Image vector of the loop around q; nullopt if one of its dominoes has no rule.
std::optional<LatticeVector> square_loop_vector(const Substitution& s, const Square& q);

/// Sweeps every square. A nonzero square is reported even if s is not
/// domino-complete; without one, incompleteness raises PreconditionError.
SquareVerdict check_consistency_domino_complete(const Substitution& s);

/// Only the given squares are evaluated. The global conclusion needs the list
/// to be the 2x2 language of a subshift; nothing here can check that.
SquareVerdict check_consistency_restricted(const Substitution& s,
                                           const std::vector<Pattern>& squares);

struct StructureData {
  Symbol t0;
  LatticeVector alpha;
  LatticeVector beta;
  std::map<Symbol, LatticeVector, SymbolLess> v;
};

/// x*alpha + y*beta - v(t) + v(t').
LatticeVector structure_vector(const StructureData& sd, const Symbol& t, const Symbol& t_prime,
                               const Vector2& xy);

class StructureMismatch : public Error {
 public:
  using Error::Error;
};

StructureData extract_structure(const Substitution& s);

struct GloballyNonOverlapping {};

struct OverlapWitness {
  Symbol t;
  Symbol t_prime;
  LatticeVector a;  // in supp(base(t))
  LatticeVector b;  // in supp(base(t'))
  Vector2 xy;       // offset of the t' cell from the t cell
};

using OverlapDecision = std::variant<GloballyNonOverlapping, OverlapWitness>;

/// Solves x*alpha + y*beta = a - b + v(t) - v(t') for every (t, t', a, b).
/// Domino-completeness makes every filled connected region covered, so each
/// integer solution is realized by some pattern. Witnesses are taken with
/// x > 0 (or x = 0, y > 0) and minimized by (max-norm, x, y, t, t', a, b).
OverlapDecision decide_overlap(const Substitution& s);

/// [0,t] and [xy,t'] joined by an L of t0 cells (horizontal leg first).
Pattern witness_pattern(const StructureData& sd, const OverlapWitness& w);

}  // namespace combsub
