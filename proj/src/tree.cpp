#include "gametree/tree.hpp"

#include <stdexcept>

#include "gametree/errors.hpp"

namespace gametree {

TreeShape TreeShape::make(int m, int k, const Caps& caps) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    if (k < 0) throw std::invalid_argument("half_height must be >= 0");
    std::uint64_t n = 1;
    for (int i = 0; i < 2 * k; ++i) {
        if (n > caps.max_eval_leaves / static_cast<std::uint64_t>(m))
            throw CapExceeded("max_eval_leaves: m^(2k) exceeds " +
                              std::to_string(caps.max_eval_leaves));
        n *= static_cast<std::uint64_t>(m);
    }
    return TreeShape{m, k, n};
}

LeafVector LeafVector::make(const TreeShape& shape, std::vector<std::uint8_t> bits) {
    if (bits.size() != shape.leaf_count)
        throw std::invalid_argument("leaf vector length must equal leaf_count");
    for (auto b : bits)
        if (b > 1) throw std::invalid_argument("leaf values must be 0 or 1");
    return LeafVector{shape, std::move(bits)};
}

LeafVector LeafVector::from_string(const TreeShape& shape, const std::string& s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("leaf string must contain only 0 and 1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return make(shape, std::move(bits));
}

std::string LeafVector::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(static_cast<char>('0' + b));
    return s;
}

namespace {

int eval_node(const LeafVector& v, std::uint64_t lo, std::uint64_t span, int depth) {
    if (span == 1) return v.bits[lo];
    const int m = v.shape.arity;
    const std::uint64_t child_span = span / m;
    const bool is_and = depth % 2 == 0;
    for (int c = 0; c < m; ++c) {
        int val = eval_node(v, lo + c * child_span, child_span, depth + 1);
        if (is_and && val == 0) return 0;
        if (!is_and && val == 1) return 1;
    }
    return is_and ? 1 : 0;
}

int snir_node(const LeafVector& v, std::uint64_t lo, std::uint64_t span, int depth,
              RandomSource& rng, EvalOutcome& out) {
    if (span == 1) {
        ++out.leaves_read;
        if (out.read_set) out.read_set->push_back(lo);
        return v.bits[lo];
    }
    const int m = v.shape.arity;
    const std::uint64_t child_span = span / m;
    const bool is_and = depth % 2 == 0;
    const auto order = rng.permutation(static_cast<std::uint32_t>(m));
    for (auto c : order) {
        int val = snir_node(v, lo + c * child_span, child_span, depth + 1, rng, out);
        if (is_and && val == 0) return 0;
        if (!is_and && val == 1) return 1;
    }
    return is_and ? 1 : 0;
}

} // namespace

int root_value(const LeafVector& v) {
    return eval_node(v, 0, v.shape.leaf_count, 0);
}

EvalOutcome snir_eval(const LeafVector& v, RandomSource& rng, bool record_reads) {
    EvalOutcome out;
    if (record_reads) out.read_set.emplace();
    out.root_bit = snir_node(v, 0, v.shape.leaf_count, 0, rng, out);
    return out;
}

} // namespace gametree
