#include "oracles.hpp"

#include <map>
#include <set>
#include <utility>

namespace combsub::testing {

std::optional<LatticeVector> rule_value(const Substitution& s, const Cell& from, const Cell& to) {
  const LatticeVector u = to.vector - from.vector;
  for (const auto& r : s.rules()) {
    if (r.t == from.type && r.t_prime == to.type && same_vector(r.u, u)) return r.v;
  }
  for (const auto& r : s.rules()) {
    if (r.t == to.type && r.t_prime == from.type && same_vector(r.u, LatticeVector(-u))) return LatticeVector(-r.v);
  }
  return std::nullopt;
}

namespace {

using Pos = std::pair<std::int64_t, std::int64_t>;

void walk(std::vector<Pos>& path, std::set<Pos>& used, std::size_t max_cells,
          std::vector<std::vector<Pos>>& cycles) {
  static const Pos steps[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Pos last = path.back();
  for (const Pos& d : steps) {
    const Pos next{last.first + d.first, last.second + d.second};
    if (next == path.front()) {
      if (path.size() >= 4) cycles.push_back(path);
      continue;
    }
    // The root is the least cell of the cycle.
    if (next < path.front() || used.count(next) || path.size() == max_cells) continue;
    // Must still be able to get home.
    const auto home = std::abs(next.first) + std::abs(next.second);
    if (static_cast<std::size_t>(home) + path.size() > max_cells) continue;
    path.push_back(next);
    used.insert(next);
    walk(path, used, max_cells, cycles);
    used.erase(next);
    path.pop_back();
  }
}

LatticeVector at(const Pos& p) { return make_vector({p.first, p.second}); }

}  // namespace

bool has_nonzero_simple_loop(const Substitution& s, std::size_t max_cells) {
  std::vector<std::vector<Pos>> cycles;
  std::vector<Pos> path{{0, 0}};
  std::set<Pos> used{{0, 0}};
  walk(path, used, max_cells, cycles);

  using State = std::pair<Symbol, std::pair<std::int64_t, std::int64_t>>;
  for (const auto& cyc : cycles) {
    for (const Symbol& t0 : s.alphabet()) {
      std::set<State> states{{t0, {0, 0}}};
      for (std::size_t i = 1; i <= cyc.size() && !states.empty(); ++i) {
        const bool closing = i == cyc.size();
        const Pos& here = cyc[i - 1];
        const Pos& next = closing ? cyc[0] : cyc[i];
        std::set<State> out;
        for (const auto& [t, w] : states) {
          for (const Symbol& t2 : s.alphabet()) {
            if (closing && t2 != t0) continue;
            auto v = rule_value(s, Cell{at(here), t}, Cell{at(next), t2});
            if (!v) continue;
            out.insert({t2, {w.first + (*v)(0), w.second + (*v)(1)}});
          }
        }
        states = std::move(out);
      }
      for (const auto& st : states) {
        if (st.second != std::pair<std::int64_t, std::int64_t>{0, 0}) return true;
      }
    }
  }
  return false;
}

}  // namespace combsub::testing
