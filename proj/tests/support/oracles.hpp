#pragma once

#include "combsub/substitution.hpp"

#include <cstddef>

namespace combsub::testing {

/// Rule lookup straight from the rule list: (t,t',u) gives v, (t',t,-u) gives -v.
std::optional<LatticeVector> rule_value(const Substitution& s, const Cell& from, const Cell& to);

/// True when some closed simple cell cycle of at most max_cells distinct cells,
/// typed from the alphabet with every step backed by a rule, has nonzero image
/// vector. Enumerates lattice cycles rooted at their least cell, then runs a
/// transfer over (type, accumulated vector) along each.
bool has_nonzero_simple_loop(const Substitution& s, std::size_t max_cells);

}  // namespace combsub::testing
