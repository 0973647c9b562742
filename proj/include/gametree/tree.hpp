#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gametree/caps.hpp"
#include "gametree/rng.hpp"

namespace gametree {

/// Complete m-ary AND/OR decision tree of height 2k.
///
/// Internal nodes at even depth are AND, at odd depth OR; the labeling is
/// implicit in the depth, nothing is stored per node. The tree itself is
/// implicit too: a subtree is just an index range over the leaf vector.
struct TreeShape {
    int arity = 2;          // m >= 2
    int half_height = 0;    // k >= 0
    std::uint64_t leaf_count = 1;   // n = m^(2k)

    /// Builds a shape, checking m >= 2, k >= 0 and the leaf cap
    /// (overflow-safe power computation).
    static TreeShape make(int m, int k, const Caps& caps = {});
};

/// 0/1 labeling of the external nodes, canonical left-to-right order.
struct LeafVector {
    TreeShape shape;
    std::vector<std::uint8_t> bits;

    static LeafVector make(const TreeShape& shape, std::vector<std::uint8_t> bits);
    /// Parses a "0101..." string; length must equal shape.leaf_count.
    static LeafVector from_string(const TreeShape& shape, const std::string& s);
    std::string to_string() const;
};

/// Result of one randomized evaluation.
struct EvalOutcome {
    int root_bit = 0;
    std::uint64_t leaves_read = 0;
    std::optional<std::vector<std::uint64_t>> read_set;  // leaf indices, if recorded
};

/// Deterministic AND/OR (minimax) value of the root. Pure in v.
int root_value(const LeafVector& v);

/// Randomized evaluation: at every internal node the children are examined
/// in a uniformly random order, each evaluated recursively, stopping as soon
/// as the node's value is determined (a 0-child for AND, a 1-child for OR).
/// root_bit always equals root_value(v); leaves_read counts the external
/// nodes evaluated.
EvalOutcome snir_eval(const LeafVector& v, RandomSource& rng, bool record_reads = false);

} // namespace gametree
