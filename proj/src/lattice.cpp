#include "combsub/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace combsub {

LatticeVector make_vector(std::initializer_list<Scalar> coords) {
  if (coords.size() == 0 || coords.size() > static_cast<std::size_t>(kMaxDimension))
    throw DimensionMismatch("lattice dimension must be between 1 and " +
                            std::to_string(kMaxDimension));
  LatticeVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (Scalar c : coords) v(i++) = c;
  return v;
}

LatticeVector zero_vector(int dimension) {
  if (dimension < 1 || dimension > kMaxDimension)
    throw DimensionMismatch("unsupported lattice dimension " + std::to_string(dimension));
  return LatticeVector::Zero(dimension);
}

LatticeVector unit_vector(int dimension, int axis, Scalar sign) {
  LatticeVector v = zero_vector(dimension);
  v(axis) = sign;
  return v;
}

bool same_vector(const LatticeVector& a, const LatticeVector& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

bool lattice_less(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

void require_same_dimension(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

std::string format_vector(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v(i);
  }
  os << ')';
  return os.str();
}

namespace {

bool is_numeric(const Symbol& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

bool symbol_less(const Symbol& a, const Symbol& b) {
  const bool na = is_numeric(a);
  const bool nb = is_numeric(b);
  if (na != nb) return na;
  if (na) {
    // Leading zeros make "01" and "1" distinct; compare by trimmed length first.
    auto trim = [](const Symbol& s) {
      auto pos = s.find_first_not_of('0');
      return pos == Symbol::npos ? std::string_view("0") : std::string_view(s).substr(pos);
    };
    auto ta = trim(a), tb = trim(b);
    if (ta.size() != tb.size()) return ta.size() < tb.size();
    if (ta != tb) return ta < tb;
  }
  return a < b;
}

bool is_valid_symbol(const Symbol& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')' || c == ',' ||
        c == ':' || c == '#')
      return false;
  }
  return true;
}

bool operator==(const Cell& a, const Cell& b) {
  return a.type == b.type && same_vector(a.vector, b.vector);
}

bool cell_less(const Cell& a, const Cell& b) {
  if (lattice_less(a.vector, b.vector)) return true;
  if (lattice_less(b.vector, a.vector)) return false;
  return symbol_less(a.type, b.type);
}

std::string format_cell(const Cell& c) { return "[" + format_vector(c.vector) + "," + c.type + "]"; }

Cell translate(const Cell& c, const LatticeVector& v) {
  require_same_dimension(c.vector, v);
  return Cell{c.vector + v, c.type};
}

Pattern::Pattern(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) return;
  dimension_ = cells_.front().dimension();
  for (const Cell& c : cells_) {
    if (c.dimension() != dimension_)
      throw DimensionMismatch("pattern mixes dimensions " + std::to_string(dimension_) +
                              " and " + std::to_string(c.dimension()));
  }
  std::sort(cells_.begin(), cells_.end(),
            [](const Cell& a, const Cell& b) { return lattice_less(a.vector, b.vector); });
  for (std::size_t i = 1; i < cells_.size(); ++i) {
    if (same_vector(cells_[i - 1].vector, cells_[i].vector))
      throw Error("pattern has two cells at " + format_vector(cells_[i].vector));
  }
}

std::optional<std::size_t> Pattern::find(const LatticeVector& v) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), v,
                             [](const Cell& c, const LatticeVector& key) {
                               return lattice_less(c.vector, key);
                             });
  if (it != cells_.end() && same_vector(it->vector, v))
    return static_cast<std::size_t>(it - cells_.begin());
  return std::nullopt;
}

const Cell* Pattern::cell_at(const LatticeVector& v) const {
  auto i = find(v);
  return i ? &cells_[*i] : nullptr;
}

bool Pattern::contains(const Cell& c) const {
  const Cell* found = cell_at(c.vector);
  return found && found->type == c.type;
}

bool operator==(const Pattern& a, const Pattern& b) {
  return a.cells_.size() == b.cells_.size() &&
         std::equal(a.cells_.begin(), a.cells_.end(), b.cells_.begin());
}

Pattern translate(const Pattern& p, const LatticeVector& v) {
  std::vector<Cell> out;
  out.reserve(p.size());
  for (const Cell& c : p) out.push_back(translate(c, v));
  return Pattern(std::move(out));
}

std::vector<LatticeVector> support(const Pattern& p) {
  std::vector<LatticeVector> out;
  out.reserve(p.size());
  for (const Cell& c : p) out.push_back(c.vector);
  return out;
}

bool domino_less(const Domino& a, const Domino& b) {
  if (a.orientation != b.orientation) return a.orientation < b.orientation;
  if (a.first != b.first) return symbol_less(a.first, b.first);
  return symbol_less(a.second, b.second);
}

std::string format_domino(const Domino& d) {
  return std::string(d.orientation == DominoOrientation::horizontal ? "horizontal(" : "vertical(") +
         d.first + "," + d.second + ")";
}

std::optional<Domino> classify_domino(const Pattern& p) {
  if (p.size() != 2 || p.dimension() != 2) return std::nullopt;
  // Cells are sorted lexicographically, so the difference is (1,0) or (0,1) for dominoes.
  const LatticeVector d = p[1].vector - p[0].vector;
  if (d(0) == 1 && d(1) == 0) return Domino{DominoOrientation::horizontal, p[0].type, p[1].type};
  if (d(0) == 0 && d(1) == 1) return Domino{DominoOrientation::vertical, p[0].type, p[1].type};
  return std::nullopt;
}

MergeResult merge_checked(const std::vector<Pattern>& parts) {
  std::map<LatticeVector, std::size_t, LatticeLess> owner;
  std::vector<Cell> cells;
  int dimension = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const Cell& c : parts[i]) {
      if (dimension == 0) dimension = c.dimension();
      if (c.dimension() != dimension) throw DimensionMismatch("merge of mixed dimensions");
      auto [it, inserted] = owner.emplace(c.vector, i);
      if (!inserted) return Collision{it->second, i, c.vector};
      cells.push_back(c);
    }
  }
  return Pattern(std::move(cells));
}

}  // namespace combsub
