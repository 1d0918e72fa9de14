#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tss3/hyperparameters.hpp"
#include "tss3/ngram_trie.hpp"

namespace tss3 {

// When enabled, all categories are pruned with `threshold` each time the
// global learned-word counter crosses a multiple of `interval`.
struct PruneSettings {
    bool enabled = true;
    std::uint64_t interval = 1'000'000;
    std::uint64_t threshold = 10;
};

// Trained classifier state: the category registry in fixed registration
// order, one prefix tree per category, and the global learning counter that
// drives the pruning schedule.
//
// Single writer: learn_* and prune_all require exclusive access.
// Classification only reads and may be fanned out across threads.
class Model {
public:
    explicit Model(Hyperparameters hp = {}, PruneSettings prune = {});

    // Reconstruction from persisted parts; inputs are assumed validated.
    Model(Hyperparameters hp, PruneSettings prune,
          std::vector<CategoryTrie> categories, std::uint64_t learned_words);

    const Hyperparameters& hyperparameters() const { return hp_; }
    const PruneSettings& prune_settings() const { return prune_; }

    // Get-or-create; returns the category's fixed index.
    std::size_t add_category(const std::string& name);

    std::optional<std::size_t> category_index(std::string_view name) const;
    std::size_t category_count() const { return categories_.size(); }
    const CategoryTrie& category(std::size_t index) const;
    const std::string& category_name(std::size_t index) const;

    // Tokenizes `text` and learns it into `category_name` (created on first
    // use). Advances the learned-word counter and fires the pruning
    // schedule when it crosses an interval boundary.
    void learn_document(std::string_view text, const std::string& category_name);
    void learn_units(std::span<const LexicalUnit> units, std::size_t category);

    std::uint64_t tf(std::span<const std::string> ngram, std::size_t category) const;
    std::uint64_t max_tf(int k, std::size_t category) const;

    // Prunes every category; returns the total number of removed nodes.
    std::uint64_t prune_all(std::uint64_t threshold);

    std::uint64_t learned_words() const { return learned_words_; }
    std::uint64_t node_count() const;

private:
    const CategoryTrie& checked(std::size_t index) const;

    Hyperparameters hp_;
    PruneSettings prune_;
    std::vector<CategoryTrie> categories_;
    std::unordered_map<std::string, std::size_t> index_by_name_;
    std::uint64_t learned_words_ = 0;
};

}  // namespace tss3
