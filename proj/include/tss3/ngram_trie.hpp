#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tss3/tokenizer.hpp"

namespace tss3 {

// One learned k-gram: `level` is k, `children` hold the (k+1)-gram
// continuations keyed by normalized term. Frequencies are raw occurrence
// counts, so a node existing implies frequency >= 1.
struct TrieNode {
    std::string term;
    std::uint64_t frequency = 0;
    int level = 0;
    std::map<std::string, TrieNode, std::less<>> children;

    bool operator==(const TrieNode&) const = default;
};

// Per-category prefix tree of word n-gram frequencies up to max_lvl words.
// The tree height never exceeds max_lvl, and without pruning every child's
// frequency is bounded by its parent's (each k-gram occurrence also counts
// its (k-1)-prefix). The same structure doubles as the recognition
// automaton at classification time: walking children from the root follows
// n-gram transitions.
//
// Concurrency: learn and prune need exclusive access; tf/max_tf/root may
// run concurrently with each other but never with a writer.
class CategoryTrie {
public:
    CategoryTrie(std::string name, int max_lvl);

    // Reconstruction from persisted parts; inputs are assumed validated.
    CategoryTrie(std::string name, int max_lvl, TrieNode root,
                 std::vector<std::uint64_t> level_max);

    const std::string& name() const { return name_; }
    int max_lvl() const { return max_lvl_; }
    const TrieNode& root() const { return root_; }
    const std::vector<std::uint64_t>& level_max() const { return level_max_; }

    // Feeds one document. Every word k-gram (k <= max_lvl) that does not
    // span a non-word unit gets its node's frequency incremented; non-word
    // units reset the live cursors. Returns the number of word units read.
    std::uint64_t learn(std::span<const LexicalUnit> units);

    // Stored frequency of an exact n-gram; 0 when any edge is missing.
    // Lengths outside 1..max_lvl throw std::invalid_argument.
    std::uint64_t tf(std::span<const std::string> ngram) const;

    // Highest frequency among level-k nodes; 0 signals an empty level.
    std::uint64_t max_tf(int k) const;

    // Removes every node with frequency <= threshold together with its
    // subtree, recomputes the per-level maxima and returns how many nodes
    // went away.
    std::uint64_t prune(std::uint64_t threshold);

    std::uint64_t node_count() const;

    // High-water mark of live cursors across all learn calls (bounded by
    // max_lvl).
    std::size_t peak_cursor_count() const { return peak_cursors_; }

    bool operator==(const CategoryTrie& other) const {
        return name_ == other.name_ && max_lvl_ == other.max_lvl_ &&
               level_max_ == other.level_max_ && root_ == other.root_;
    }

private:
    void recompute_level_max();

    std::string name_;
    int max_lvl_ = 0;
    TrieNode root_;                          // sentinel, level 0
    std::vector<std::uint64_t> level_max_;   // index k-1 = max freq at level k
    std::size_t peak_cursors_ = 0;
};

}  // namespace tss3
