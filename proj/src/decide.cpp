#include "combsub/decide.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

namespace combsub {

namespace {

void require_plane(const Substitution& s) {
  if (s.dimension() != 2 && !(s.dimension() == 0 && s.rules().empty()))
    throw PreconditionError("decision procedures need dimension 2, got " +
                            std::to_string(s.dimension()));
}

Cell cell(Scalar x, Scalar y, const Symbol& t) { return Cell{make_vector({x, y}), t}; }

Vector2 to_vector2(const LatticeVector& v) {
  if (v.size() != 2) throw DimensionMismatch("expected a 2-dimensional vector");
  return Vector2(v(0), v(1));
}

}  // namespace

std::string format_square(const Square& q) {
  return "(" + q.bl + "," + q.br + ";" + q.tl + "," + q.tr + ")";
}

Pattern to_pattern(const Square& q, const Vector2& origin) {
  const Scalar x = origin(0), y = origin(1);
  return Pattern({cell(x, y, q.bl), cell(x + 1, y, q.br), cell(x, y + 1, q.tl),
                  cell(x + 1, y + 1, q.tr)});
}

Square square_of(const Pattern& p) {
  if (p.size() != 4 || p.dimension() != 2)
    throw MalformedSquare("a 2x2 square needs four 2-dimensional cells");
  // Sorted order: (x,y), (x,y+1), (x+1,y), (x+1,y+1).
  const LatticeVector o = p[0].vector;
  const LatticeVector expect[4] = {o, o + make_vector({0, 1}), o + make_vector({1, 0}),
                                   o + make_vector({1, 1})};
  for (int i = 0; i < 4; ++i) {
    if (!same_vector(p[i].vector, expect[i]))
      throw MalformedSquare("pattern at " + format_vector(o) + " is not a 2x2 block");
  }
  return Square{p[0].type, p[2].type, p[1].type, p[3].type};
}

std::vector<Domino> dominoes_of(const Square& q) {
  return {Domino{DominoOrientation::horizontal, q.bl, q.br},
          Domino{DominoOrientation::horizontal, q.tl, q.tr},
          Domino{DominoOrientation::vertical, q.bl, q.tl},
          Domino{DominoOrientation::vertical, q.br, q.tr}};
}

std::vector<Square> all_squares(const std::vector<Symbol>& alphabet) {
  std::vector<Symbol> a = alphabet;
  std::sort(a.begin(), a.end(), symbol_less);
  std::vector<Square> out;
  out.reserve(a.size() * a.size() * a.size() * a.size());
  for (const Symbol& bl : a)
    for (const Symbol& br : a)
      for (const Symbol& tl : a)
        for (const Symbol& tr : a) out.push_back(Square{bl, br, tl, tr});
  return out;
}

std::optional<LatticeVector> domino_vector(const Substitution& s, const Domino& d) {
  const bool h = d.orientation == DominoOrientation::horizontal;
  return sigma_rule(s, cell(0, 0, d.first), cell(h ? 1 : 0, h ? 0 : 1, d.second));
}

DominoReport is_domino_complete(const Substitution& s) {
  require_plane(s);
  DominoReport out;
  for (DominoOrientation o : {DominoOrientation::horizontal, DominoOrientation::vertical}) {
    for (const Symbol& t : s.alphabet()) {
      for (const Symbol& u : s.alphabet()) {
        Domino d{o, t, u};
        if (!domino_vector(s, d)) out.missing.push_back(d);
      }
    }
  }
  out.complete = out.missing.empty();
  return out;
}

RestrictedReport is_restricted_domino_complete(const Substitution& s,
                                               const std::vector<Pattern>& squares) {
  require_plane(s);
  auto less = [](const Domino& a, const Domino& b) { return domino_less(a, b); };
  std::set<Domino, decltype(less)> wanted(less);
  for (const Pattern& p : squares) {
    for (const Domino& d : dominoes_of(square_of(p))) wanted.insert(d);
  }

  RestrictedReport out;
  for (const Domino& d : wanted) {
    if (!domino_vector(s, d)) out.missing.push_back(d);
  }
  for (const Pattern& start : starting_patterns(s)) {
    auto d = classify_domino(start);
    if (!d || !wanted.count(*d)) out.extra.push_back(start);
  }
  out.complete = out.missing.empty() && out.extra.empty();
  return out;
}

std::optional<LatticeVector> square_loop_vector(const Substitution& s, const Square& q) {
  auto bottom = domino_vector(s, {DominoOrientation::horizontal, q.bl, q.br});
  auto right = domino_vector(s, {DominoOrientation::vertical, q.br, q.tr});
  auto top = domino_vector(s, {DominoOrientation::horizontal, q.tl, q.tr});
  auto left = domino_vector(s, {DominoOrientation::vertical, q.bl, q.tl});
  if (!bottom || !right || !top || !left) return std::nullopt;
  return LatticeVector(*bottom + *right - *top - *left);
}

namespace {

SquareVerdict failing(const Square& q, LatticeVector value) {
  SquareVerdict out;
  out.consistent = false;
  out.witness = q;
  out.loop = Path{{cell(0, 0, q.bl), cell(1, 0, q.br), cell(1, 1, q.tr), cell(0, 1, q.tl),
                   cell(0, 0, q.bl)}};
  out.image_vector = std::move(value);
  return out;
}

SquareVerdict passing() {
  SquareVerdict out;
  out.image_vector = zero_vector(2);
  return out;
}

}  // namespace

SquareVerdict check_consistency_domino_complete(const Substitution& s) {
  require_plane(s);
  for (const Square& q : all_squares(s.alphabet())) {
    auto value = square_loop_vector(s, q);
    if (value && !value->isZero()) return failing(q, *value);
  }
  DominoReport report = is_domino_complete(s);
  if (!report.complete)
    throw PreconditionError("substitution is not domino-complete (" +
                            std::to_string(report.missing.size()) + " dominoes missing, first " +
                            format_domino(report.missing.front()) + ")");
  return passing();
}

SquareVerdict check_consistency_restricted(const Substitution& s,
                                           const std::vector<Pattern>& squares) {
  RestrictedReport report = is_restricted_domino_complete(s, squares);
  if (!report.complete) {
    std::string why = !report.missing.empty()
                          ? "domino " + format_domino(report.missing.front()) + " has no rule"
                          : "starting pattern at " + format_cell(report.extra.front()[1]) +
                                " occurs in no square";
    throw PreconditionError("substitution is not domino-complete for the squares: " + why);
  }
  for (const Pattern& p : squares) {
    const Square q = square_of(p);
    LatticeVector value = *square_loop_vector(s, q);
    if (!value.isZero()) return failing(q, value);
  }
  return passing();
}

LatticeVector structure_vector(const StructureData& sd, const Symbol& t, const Symbol& t_prime,
                               const Vector2& xy) {
  return xy(0) * sd.alpha + xy(1) * sd.beta - sd.v.at(t) + sd.v.at(t_prime);
}

StructureData extract_structure(const Substitution& s) {
  require_plane(s);
  if (s.alphabet().empty()) throw PreconditionError("empty alphabet");
  if (!is_domino_complete(s).complete)
    throw PreconditionError("substitution is not domino-complete");
  SquareVerdict sq = check_consistency_domino_complete(s);
  if (!sq.consistent)
    throw PreconditionError("substitution is inconsistent on the square " +
                            format_square(*sq.witness));

  StructureData sd;
  sd.t0 = s.alphabet().front();
  sd.alpha = *domino_vector(s, {DominoOrientation::horizontal, sd.t0, sd.t0});
  sd.beta = *domino_vector(s, {DominoOrientation::vertical, sd.t0, sd.t0});
  for (const Symbol& t : s.alphabet())
    sd.v[t] = *domino_vector(s, {DominoOrientation::horizontal, sd.t0, t}) - sd.alpha;

  for (const ConcatenationRule& r : s.rules()) {
    LatticeVector expect = structure_vector(sd, r.t, r.t_prime, to_vector2(r.u));
    if (!same_vector(expect, r.v))
      throw StructureMismatch("rule " + format_rule(r) + " disagrees with the structure (expected " +
                              format_vector(expect) + ")");
  }
  return sd;
}

OverlapDecision decide_overlap(const Substitution& s) {
  const StructureData sd = extract_structure(s);
  const Vector2 alpha = to_vector2(sd.alpha);
  const Vector2 beta = to_vector2(sd.beta);

  std::optional<OverlapWitness> best;
  auto key = [](const OverlapWitness& w) {
    return std::make_tuple(std::max(std::abs(w.xy(0)), std::abs(w.xy(1))), w.xy(0), w.xy(1));
  };
  auto better = [&](const OverlapWitness& a, const OverlapWitness& b) {
    if (key(a) != key(b)) return key(a) < key(b);
    if (a.t != b.t) return symbol_less(a.t, b.t);
    if (a.t_prime != b.t_prime) return symbol_less(a.t_prime, b.t_prime);
    if (!same_vector(a.a, b.a)) return lattice_less(a.a, b.a);
    return lattice_less(a.b, b.b);
  };

  for (const Symbol& t : s.alphabet()) {
    for (const Symbol& tp : s.alphabet()) {
      const Vector2 shift = to_vector2(sd.v.at(t) - sd.v.at(tp));
      for (const Cell& ca : s.base_image(t)) {
        for (const Cell& cb : s.base_image(tp)) {
          const Vector2 w = to_vector2(ca.vector - cb.vector) + shift;
          auto xy = least_positive_solution(solve_lattice_equation<Scalar>(alpha, beta, w));
          if (!xy) continue;
          OverlapWitness cand{t, tp, ca.vector, cb.vector, *xy};
          if (!best || better(cand, *best)) best = std::move(cand);
        }
      }
    }
  }
  if (best) return *best;
  return GloballyNonOverlapping{};
}

Pattern witness_pattern(const StructureData& sd, const OverlapWitness& w) {
  const Scalar x = w.xy(0), y = w.xy(1);
  std::vector<Cell> cells{cell(0, 0, w.t), cell(x, y, w.t_prime)};
  const Scalar sx = x > 0 ? 1 : -1, sy = y > 0 ? 1 : -1;
  for (Scalar i = sx; i != x + sx && x != 0; i += sx) {
    if (i == x && y == 0) break;
    cells.push_back(cell(i, 0, sd.t0));
  }
  if (x == 0) {
    for (Scalar j = sy; j != y; j += sy) cells.push_back(cell(0, j, sd.t0));
  } else {
    for (Scalar j = sy; y != 0 && j != y; j += sy) cells.push_back(cell(x, j, sd.t0));
  }
  return Pattern(std::move(cells));
}

}  // namespace combsub
