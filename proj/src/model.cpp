#include "tss3/model.hpp"

#include <stdexcept>
#include <utility>

#include "tss3/errors.hpp"

namespace tss3 {

Model::Model(Hyperparameters hp, PruneSettings prune) : hp_(hp), prune_(prune) {
    hp_.validate();
}

Model::Model(Hyperparameters hp, PruneSettings prune, std::vector<CategoryTrie> categories,
             std::uint64_t learned_words)
    : hp_(hp), prune_(prune), categories_(std::move(categories)),
      learned_words_(learned_words) {
    hp_.validate();
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        auto [it, inserted] = index_by_name_.emplace(categories_[i].name(), i);
        if (!inserted)
            throw ConfigurationError("duplicate category name '" + categories_[i].name() + "'");
    }
}

std::size_t Model::add_category(const std::string& name) {
    if (auto it = index_by_name_.find(name); it != index_by_name_.end()) return it->second;
    categories_.emplace_back(name, hp_.max_lvl);
    index_by_name_.emplace(name, categories_.size() - 1);
    return categories_.size() - 1;
}

std::optional<std::size_t> Model::category_index(std::string_view name) const {
    if (auto it = index_by_name_.find(std::string(name)); it != index_by_name_.end())
        return it->second;
    return std::nullopt;
}

const CategoryTrie& Model::category(std::size_t index) const { return checked(index); }

const std::string& Model::category_name(std::size_t index) const {
    return checked(index).name();
}

void Model::learn_document(std::string_view text, const std::string& category_name) {
    const auto units = tokenize(text);
    learn_units(units, add_category(category_name));
}

void Model::learn_units(std::span<const LexicalUnit> units, std::size_t category) {
    if (category >= categories_.size())
        throw std::out_of_range("learn_units: unknown category index");
    const std::uint64_t before = learned_words_;
    learned_words_ += categories_[category].learn(units);
    if (prune_.enabled && prune_.interval > 0 &&
        learned_words_ / prune_.interval > before / prune_.interval) {
        prune_all(prune_.threshold);
    }
}

std::uint64_t Model::tf(std::span<const std::string> ngram, std::size_t category) const {
    return checked(category).tf(ngram);
}

std::uint64_t Model::max_tf(int k, std::size_t category) const {
    return checked(category).max_tf(k);
}

std::uint64_t Model::prune_all(std::uint64_t threshold) {
    std::uint64_t removed = 0;
    for (auto& trie : categories_) removed += trie.prune(threshold);
    return removed;
}

std::uint64_t Model::node_count() const {
    std::uint64_t total = 0;
    for (const auto& trie : categories_) total += trie.node_count();
    return total;
}

const CategoryTrie& Model::checked(std::size_t index) const {
    if (index >= categories_.size())
        throw std::out_of_range("unknown category index");
    return categories_[index];
}

}  // namespace tss3
