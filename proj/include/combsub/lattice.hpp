#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace combsub {

/// Largest supported lattice dimension. Vectors live inline (no heap).
inline constexpr int kMaxDimension = 8;

template <typename Scalar>
using BasicLatticeVector =
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension, 1>;

using Scalar = std::int64_t;
using LatticeVector = BasicLatticeVector<Scalar>;
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Alphabet element. Opaque nonempty token without whitespace or `(),:#`.
using Symbol = std::string;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation's hypothesis does not hold (dimension other than 2, missing
/// dominoes, inconsistent input, tiles that do not match).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

LatticeVector make_vector(std::initializer_list<Scalar> coords);
LatticeVector zero_vector(int dimension);
LatticeVector unit_vector(int dimension, int axis, Scalar sign = 1);

/// Componentwise equality that also compares dimensions (Eigen asserts on mismatch).
bool same_vector(const LatticeVector& a, const LatticeVector& b);
/// Lexicographic order: dimension first, then coordinates.
bool lattice_less(const LatticeVector& a, const LatticeVector& b);
void require_same_dimension(const LatticeVector& a, const LatticeVector& b);

std::string format_vector(const LatticeVector& v);

struct LatticeLess {
  bool operator()(const LatticeVector& a, const LatticeVector& b) const {
    return lattice_less(a, b);
  }
};

/// Numeric tokens first (by value), then bytewise.
bool symbol_less(const Symbol& a, const Symbol& b);
bool is_valid_symbol(const Symbol& s);

struct SymbolLess {
  bool operator()(const Symbol& a, const Symbol& b) const { return symbol_less(a, b); }
};

struct Cell {
  LatticeVector vector;
  Symbol type;

  int dimension() const { return static_cast<int>(vector.size()); }
};

bool operator==(const Cell& a, const Cell& b);
inline bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
/// Order by vector, then type.
bool cell_less(const Cell& a, const Cell& b);
std::string format_cell(const Cell& c);

Cell translate(const Cell& c, const LatticeVector& v);

/// Finite set of cells with pairwise distinct vectors, kept in lexicographic
/// vector order. An empty pattern has dimension 0 until cells are added.
class Pattern {
 public:
  Pattern() = default;
  /// Throws Error on duplicate vectors, DimensionMismatch on mixed dimensions.
  explicit Pattern(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  int dimension() const { return dimension_; }

  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }
  const Cell& operator[](std::size_t i) const { return cells_[i]; }

  /// Index of the cell at `v`, if any.
  std::optional<std::size_t> find(const LatticeVector& v) const;
  const Cell* cell_at(const LatticeVector& v) const;
  bool contains(const Cell& c) const;

  friend bool operator==(const Pattern& a, const Pattern& b);
  friend bool operator!=(const Pattern& a, const Pattern& b) { return !(a == b); }

 private:
  std::vector<Cell> cells_;
  int dimension_ = 0;
};

Pattern translate(const Pattern& p, const LatticeVector& v);
std::vector<LatticeVector> support(const Pattern& p);

enum class DominoOrientation { horizontal, vertical };

/// `first` is the left (horizontal) or bottom (vertical) type.
struct Domino {
  DominoOrientation orientation;
  Symbol first;
  Symbol second;

  friend bool operator==(const Domino&, const Domino&) = default;
};

bool domino_less(const Domino& a, const Domino& b);
std::string format_domino(const Domino& d);

std::optional<Domino> classify_domino(const Pattern& p);

/// Two parts of a union claiming the same vector.
struct Collision {
  std::size_t first_part;
  std::size_t second_part;
  LatticeVector vector;
};

using MergeResult = std::variant<Pattern, Collision>;

/// Union of the parts; any vector claimed twice is a collision, even when the
/// coinciding cells have the same type.
MergeResult merge_checked(const std::vector<Pattern>& parts);

}  // namespace combsub
