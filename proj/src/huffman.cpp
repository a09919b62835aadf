#include "semdex/huffman.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace semdex::embed {

HuffmanTree build_huffman(std::span<const corpus::VocabEntry> words) {
    const std::size_t v = words.size();
    if (v == 0) throw std::invalid_argument("build_huffman: empty vocabulary");

    HuffmanTree tree;
    tree.codes.resize(v);
    tree.paths.resize(v);
    tree.internal_nodes = v >= 2 ? static_cast<std::int32_t>(v - 1) : 0;
    if (v == 1) return tree; // single leaf: empty code, probability 1

    // Leaves sorted ascending by (count, word); internal nodes are created
    // in nondecreasing count order, so a FIFO queue keeps them sorted too.
    std::vector<std::size_t> order(v);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (words[a].count != words[b].count) return words[a].count < words[b].count;
        return words[a].word < words[b].word;
    });

    // Node ids: 0..v-1 leaves (in sorted order), v..2v-2 internal nodes.
    const std::size_t total = 2 * v - 1;
    std::vector<std::uint64_t> count(total, 0);
    std::vector<std::int32_t> parent(total, -1);
    std::vector<std::uint8_t> bit(total, 0);
    for (std::size_t i = 0; i < v; ++i) count[i] = words[order[i]].count;

    std::size_t leaf_head = 0;
    std::size_t node_head = v, node_tail = v;
    // Ties between a leaf and an internal node go to the leaf.
    auto pop_min = [&]() -> std::size_t {
        bool leaf_ok = leaf_head < v;
        bool node_ok = node_head < node_tail;
        bool take_leaf =
            leaf_ok && (!node_ok || count[leaf_head] <= count[node_head]);
        return take_leaf ? leaf_head++ : node_head++;
    };

    for (std::size_t merged = v; merged < total; ++merged) {
        std::size_t left = pop_min();
        std::size_t right = pop_min();
        count[merged] = count[left] + count[right];
        parent[left] = parent[right] = static_cast<std::int32_t>(merged);
        bit[left] = 0;
        bit[right] = 1;
        node_tail = merged + 1;
    }

    for (std::size_t i = 0; i < v; ++i) {
        std::vector<std::uint8_t> code;
        std::vector<std::int32_t> path;
        for (std::size_t node = i; parent[node] >= 0; node = parent[node]) {
            code.push_back(bit[node]);
            path.push_back(parent[node] - static_cast<std::int32_t>(v));
        }
        std::reverse(code.begin(), code.end());
        std::reverse(path.begin(), path.end());
        tree.codes[order[i]] = std::move(code);
        tree.paths[order[i]] = std::move(path);
    }
    return tree;
}

} // namespace semdex::embed
