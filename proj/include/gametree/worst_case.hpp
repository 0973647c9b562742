#pragma once

#include <cstdint>
#include <vector>

#include "gametree/caps.hpp"
#include "gametree/tree.hpp"

namespace gametree {

/// Block of m^2 leaves whose depth-2 subtree evaluates to 1 and
/// stochastically maximizes the number of leaves read: m groups, each
/// holding m-1 zeros followed by a single 1.
std::vector<std::uint8_t> one_block(int m);

/// Block of m^2 leaves evaluating to 0: one all-zero group first, then
/// m-1 groups of (m-1 zeros, one 1). Has exactly m-1 ones.
std::vector<std::uint8_t> zero_block(int m);

/// Worst-case input of m^(2k) leaves with the given root value, built by
/// substituting digits k times: 1 -> one_block(m), 0 -> zero_block(m).
/// The substitution runs iteratively over digit strings.
LeafVector worst_input(int m, int k, int root, const Caps& caps = {});

} // namespace gametree
