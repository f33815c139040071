#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

namespace combsub {

/// g = gcd(a, b) >= 0 with s*a + t*b = g.
template <typename Scalar>
std::tuple<Scalar, Scalar, Scalar> extended_gcd(Scalar a, Scalar b) {
  Scalar r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Scalar q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

template <typename Scalar>
Scalar floor_div(Scalar a, Scalar b) {
  Scalar q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

template <typename Scalar>
Scalar ceil_div(Scalar a, Scalar b) {
  return -floor_div<Scalar>(-a, b);
}

enum class SolutionKind { empty, unique, line, plane };

/// Integer solutions of x*alpha + y*beta = w.
/// unique: {particular}; line: {particular + k*direction}; plane: all of Z^2.
template <typename Scalar>
struct DiophantineSolutionSet {
  using Vec = Eigen::Matrix<Scalar, 2, 1>;

  SolutionKind kind = SolutionKind::empty;
  Vec particular = Vec::Zero();
  /// Primitive, first nonzero coordinate positive.
  Vec direction = Vec::Zero();

  bool contains(const Vec& p) const {
    switch (kind) {
      case SolutionKind::empty:
        return false;
      case SolutionKind::plane:
        return true;
      case SolutionKind::unique:
        return p == particular;
      case SolutionKind::line: {
        const Vec d = p - particular;
        if (d(0) * direction(1) - d(1) * direction(0) != 0) return false;
        const int i = direction(0) != 0 ? 0 : 1;
        return d(i) % direction(i) == 0;
      }
    }
    return false;
  }

  Vec at(Scalar k) const { return particular + k * direction; }
};

namespace detail {

template <typename Scalar>
Scalar max_norm(const Eigen::Matrix<Scalar, 2, 1>& v) {
  return std::max(v(0) < 0 ? -v(0) : v(0), v(1) < 0 ? -v(1) : v(1));
}

/// Least k minimizing max_norm(p + k*d). The integer minimizers form an
/// interval whose left end sits at the floor or ceiling of a breakpoint.
template <typename Scalar>
Scalar least_minimizer(const Eigen::Matrix<Scalar, 2, 1>& p, const Eigen::Matrix<Scalar, 2, 1>& d) {
  std::vector<Scalar> candidates{0};
  auto add = [&](Scalar num, Scalar den) {
    if (den == 0) return;
    candidates.push_back(floor_div(num, den));
    candidates.push_back(ceil_div(num, den));
  };
  add(-p(0), d(0));
  add(-p(1), d(1));
  add(p(1) - p(0), d(0) - d(1));
  add(-p(0) - p(1), d(0) + d(1));
  Scalar best = candidates.front();
  Scalar best_norm = max_norm<Scalar>(p + best * d);
  for (Scalar k : candidates) {
    const Scalar n = max_norm<Scalar>(p + k * d);
    if (n < best_norm || (n == best_norm && k < best)) {
      best = k;
      best_norm = n;
    }
  }
  return best;
}

}  // namespace detail

template <typename Scalar>
DiophantineSolutionSet<Scalar> solve_lattice_equation(const Eigen::Matrix<Scalar, 2, 1>& alpha,
                                                      const Eigen::Matrix<Scalar, 2, 1>& beta,
                                                      const Eigen::Matrix<Scalar, 2, 1>& w) {
  using Vec = Eigen::Matrix<Scalar, 2, 1>;
  using Mat = Eigen::Matrix<Scalar, 2, 2>;
  DiophantineSolutionSet<Scalar> out;

  Mat m;
  m << alpha, beta;
  const Scalar det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det != 0) {
    const Scalar nx = w(0) * m(1, 1) - m(0, 1) * w(1);
    const Scalar ny = m(0, 0) * w(1) - w(0) * m(1, 0);
    if (nx % det != 0 || ny % det != 0) return out;
    out.kind = SolutionKind::unique;
    out.particular = Vec(nx / det, ny / det);
    return out;
  }

  if (alpha.isZero() && beta.isZero()) {
    if (w.isZero()) {
      out.kind = SolutionKind::plane;
      out.direction = Vec(1, 0);
    }
    return out;
  }

  // Columns are parallel: alpha = a*p, beta = b*p with p primitive.
  const Vec g = alpha.isZero() ? beta : alpha;
  const Scalar content = std::get<0>(extended_gcd<Scalar>(g(0), g(1)));
  const Vec p = g / content;
  const int i = p(0) != 0 ? 0 : 1;
  if (p(0) * w(1) - p(1) * w(0) != 0 || w(i) % p(i) != 0) return out;
  const Scalar a = alpha(i) / p(i);
  const Scalar b = beta(i) / p(i);
  const Scalar c = w(i) / p(i);

  const auto [d, s, t] = extended_gcd<Scalar>(a, b);
  if (c % d != 0) return out;
  Vec part(s * (c / d), t * (c / d));
  Vec dir(b / d, -a / d);
  if (dir(0) < 0 || (dir(0) == 0 && dir(1) < 0)) dir = -dir;

  out.kind = SolutionKind::line;
  out.direction = dir;
  out.particular = part + detail::least_minimizer<Scalar>(part, dir) * dir;
  return out;
}

/// Least solution by (max-norm, x, y) with x > 0, or x = 0 and y > 0.
template <typename Scalar>
std::optional<Eigen::Matrix<Scalar, 2, 1>> least_positive_solution(
    const DiophantineSolutionSet<Scalar>& set) {
  using Vec = Eigen::Matrix<Scalar, 2, 1>;
  auto positive = [](const Vec& v) { return v(0) > 0 || (v(0) == 0 && v(1) > 0); };
  switch (set.kind) {
    case SolutionKind::empty:
      return std::nullopt;
    case SolutionKind::plane:
      return Vec(0, 1);
    case SolutionKind::unique:
      if (positive(set.particular)) return set.particular;
      return std::nullopt;
    case SolutionKind::line:
      break;
  }
  const Vec& p = set.particular;
  const Vec& d = set.direction;
  // Positive solutions form a ray {k >= k0}, possibly empty or everything.
  std::optional<Scalar> k0;
  if (d(0) > 0) {
    k0 = floor_div<Scalar>(-p(0), d(0)) + 1;
    if ((-p(0)) % d(0) == 0 && positive(set.at(-p(0) / d(0)))) k0 = -p(0) / d(0);
  } else if (p(0) > 0) {
    return p;  // the whole line is positive; particular already minimizes
  } else if (p(0) < 0) {
    return std::nullopt;
  } else {
    k0 = floor_div<Scalar>(-p(1), d(1)) + 1;
  }
  // particular is the leftmost minimizer, so the best point on the ray is
  // either it or the ray's first point.
  return set.at(std::max<Scalar>(0, *k0));
}

}  // namespace combsub
