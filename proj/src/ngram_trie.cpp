#include "tss3/ngram_trie.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace tss3 {
namespace {

std::uint64_t subtree_size(const TrieNode& node) {
    std::uint64_t n = 1;
    for (const auto& [term, child] : node.children) n += subtree_size(child);
    return n;
}

std::uint64_t prune_node(TrieNode& node, std::uint64_t threshold) {
    std::uint64_t removed = 0;
    for (auto it = node.children.begin(); it != node.children.end();) {
        if (it->second.frequency <= threshold) {
            removed += subtree_size(it->second);
            it = node.children.erase(it);
        } else {
            removed += prune_node(it->second, threshold);
            ++it;
        }
    }
    return removed;
}

void collect_level_max(const TrieNode& node, std::vector<std::uint64_t>& level_max) {
    for (const auto& [term, child] : node.children) {
        auto& best = level_max[static_cast<std::size_t>(child.level) - 1];
        if (child.frequency > best) best = child.frequency;
        collect_level_max(child, level_max);
    }
}

}  // namespace

CategoryTrie::CategoryTrie(std::string name, int max_lvl)
    : name_(std::move(name)), max_lvl_(max_lvl),
      level_max_(static_cast<std::size_t>(max_lvl), 0) {
    if (max_lvl < 1) throw std::invalid_argument("CategoryTrie: max_lvl must be >= 1");
}

CategoryTrie::CategoryTrie(std::string name, int max_lvl, TrieNode root,
                           std::vector<std::uint64_t> level_max)
    : name_(std::move(name)), max_lvl_(max_lvl), root_(std::move(root)),
      level_max_(std::move(level_max)) {
    if (max_lvl < 1) throw std::invalid_argument("CategoryTrie: max_lvl must be >= 1");
    level_max_.resize(static_cast<std::size_t>(max_lvl), 0);
}

std::uint64_t CategoryTrie::learn(std::span<const LexicalUnit> units) {
    std::vector<TrieNode*> cursors;
    cursors.reserve(static_cast<std::size_t>(max_lvl_));
    std::uint64_t words = 0;
    for (const auto& unit : units) {
        if (!unit.is_word()) {
            // n-grams never span punctuation or other non-word material
            cursors.clear();
            continue;
        }
        ++words;
        cursors.push_back(&root_);
        if (cursors.size() > peak_cursors_) peak_cursors_ = cursors.size();
        std::size_t kept = 0;
        for (TrieNode* node : cursors) {
            auto [it, inserted] = node->children.try_emplace(unit.text);
            TrieNode& child = it->second;
            if (inserted) {
                child.term = unit.text;
                child.level = node->level + 1;
            }
            ++child.frequency;
            auto& best = level_max_[static_cast<std::size_t>(child.level) - 1];
            if (child.frequency > best) best = child.frequency;
            if (child.level < max_lvl_) cursors[kept++] = &child;
        }
        cursors.resize(kept);
        assert(cursors.size() < static_cast<std::size_t>(max_lvl_) ||
               max_lvl_ == 1);
    }
    return words;
}

std::uint64_t CategoryTrie::tf(std::span<const std::string> ngram) const {
    if (ngram.empty() || ngram.size() > static_cast<std::size_t>(max_lvl_))
        throw std::invalid_argument("tf: n-gram length must be in 1..max_lvl");
    const TrieNode* node = &root_;
    for (const auto& term : ngram) {
        auto it = node->children.find(term);
        if (it == node->children.end()) return 0;
        node = &it->second;
    }
    return node->frequency;
}

std::uint64_t CategoryTrie::max_tf(int k) const {
    if (k < 1 || k > max_lvl_)
        throw std::invalid_argument("max_tf: level must be in 1..max_lvl");
    return level_max_[static_cast<std::size_t>(k) - 1];
}

std::uint64_t CategoryTrie::prune(std::uint64_t threshold) {
    const std::uint64_t removed = prune_node(root_, threshold);
    if (removed > 0) recompute_level_max();
    return removed;
}

std::uint64_t CategoryTrie::node_count() const { return subtree_size(root_) - 1; }

void CategoryTrie::recompute_level_max() {
    level_max_.assign(static_cast<std::size_t>(max_lvl_), 0);
    collect_level_max(root_, level_max_);
}

}  // namespace tss3
