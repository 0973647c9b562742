#include "gametree/worst_case.hpp"

#include <stdexcept>

namespace gametree {

std::vector<std::uint8_t> one_block(int m) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    std::vector<std::uint8_t> block;
    block.reserve(static_cast<std::size_t>(m) * m);
    for (int g = 0; g < m; ++g) {
        for (int i = 0; i < m - 1; ++i) block.push_back(0);
        block.push_back(1);
    }
    return block;
}

std::vector<std::uint8_t> zero_block(int m) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    std::vector<std::uint8_t> block;
    block.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) block.push_back(0);
    for (int g = 0; g < m - 1; ++g) {
        for (int i = 0; i < m - 1; ++i) block.push_back(0);
        block.push_back(1);
    }
    return block;
}

LeafVector worst_input(int m, int k, int root, const Caps& caps) {
    if (root != 0 && root != 1) throw std::invalid_argument("root must be 0 or 1");
    const TreeShape shape = TreeShape::make(m, k, caps);  // validates m, k, cap
    const auto ones = one_block(m);
    const auto zeros = zero_block(m);
    std::vector<std::uint8_t> digits{static_cast<std::uint8_t>(root)};
    for (int level = 0; level < k; ++level) {
        std::vector<std::uint8_t> next;
        next.reserve(digits.size() * ones.size());
        for (auto d : digits) {
            const auto& block = d ? ones : zeros;
            next.insert(next.end(), block.begin(), block.end());
        }
        digits.swap(next);
    }
    return LeafVector::make(shape, std::move(digits));
}

} // namespace gametree
