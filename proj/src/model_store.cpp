#include "tss3/model_store.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tss3/errors.hpp"

namespace tss3 {
namespace {

using nlohmann::json;

json node_to_json(const TrieNode& node) {
    json out;
    out["freq"] = node.frequency;
    if (!node.children.empty()) {
        json children = json::object();
        for (const auto& [term, child] : node.children) children[term] = node_to_json(child);
        out["children"] = std::move(children);
    }
    return out;
}

std::string path_label(const std::string& category, const std::string& path) {
    return "category '" + category + "', node '" + path + "'";
}

std::uint64_t read_frequency(const json& value, const std::string& category,
                             const std::string& path) {
    if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0)
        throw CorruptModelError(path_label(category, path) +
                                ": frequency must be a positive integer");
    return value.get<std::uint64_t>();
}

TrieNode parse_node(const json& value, const std::string& category, const std::string& term,
                    int level, int max_lvl, std::uint64_t parent_frequency,
                    const std::string& path) {
    if (!value.is_object())
        throw CorruptModelError(path_label(category, path) + ": node must be an object");
    if (level > max_lvl)
        throw CorruptModelError(path_label(category, path) + ": level exceeds max_lvl");

    TrieNode node;
    node.term = term;
    node.level = level;
    node.frequency = read_frequency(value.at("freq"), category, path);
    if (level > 1 && node.frequency > parent_frequency)
        throw CorruptModelError(path_label(category, path) +
                                ": frequency exceeds its parent's");

    if (const auto it = value.find("children"); it != value.end()) {
        if (!it->is_object())
            throw CorruptModelError(path_label(category, path) +
                                    ": children must be an object");
        for (const auto& [child_term, child_value] : it->items()) {
            node.children.emplace(
                child_term, parse_node(child_value, category, child_term, level + 1, max_lvl,
                                       node.frequency, path + "->" + child_term));
        }
    }
    return node;
}

void collect_level_max(const TrieNode& node, std::vector<std::uint64_t>& level_max) {
    for (const auto& [term, child] : node.children) {
        auto& best = level_max[static_cast<std::size_t>(child.level) - 1];
        if (child.frequency > best) best = child.frequency;
        collect_level_max(child, level_max);
    }
}

CategoryTrie parse_category(const json& value, int max_lvl) {
    const std::string name = value.at("name").get<std::string>();

    TrieNode root;
    if (const auto it = value.find("ngrams"); it != value.end()) {
        if (!it->is_object())
            throw CorruptModelError("category '" + name + "': ngrams must be an object");
        for (const auto& [term, child_value] : it->items()) {
            root.children.emplace(
                term, parse_node(child_value, name, term, 1, max_lvl, 0, term));
        }
    }

    std::vector<std::uint64_t> recomputed(static_cast<std::size_t>(max_lvl), 0);
    collect_level_max(root, recomputed);

    const auto& stored_json = value.at("level_max");
    if (!stored_json.is_array() ||
        stored_json.size() != static_cast<std::size_t>(max_lvl))
        throw CorruptModelError("category '" + name +
                                "': level_max must list one entry per level");
    std::vector<std::uint64_t> stored;
    for (const auto& entry : stored_json) {
        if (!entry.is_number_unsigned())
            throw CorruptModelError("category '" + name +
                                    "': level_max entries must be non-negative integers");
        stored.push_back(entry.get<std::uint64_t>());
    }
    if (stored != recomputed)
        throw CorruptModelError("category '" + name +
                                "': stored level maxima do not match the tree");

    return CategoryTrie(name, max_lvl, std::move(root), std::move(stored));
}

}  // namespace

std::string serialize_model(const Model& model) {
    json j;
    j["format"] = "tss3-model";
    j["version"] = kModelFormatVersion;

    const auto& hp = model.hyperparameters();
    j["hyperparameters"] = {{"sigma", hp.sigma},     {"lambda", hp.lambda},
                            {"rho", hp.rho},         {"epsilon", hp.epsilon},
                            {"max_lvl", hp.max_lvl}};
    j["learned_words"] = model.learned_words();

    json categories = json::array();
    for (std::size_t c = 0; c < model.category_count(); ++c) {
        const CategoryTrie& trie = model.category(c);
        json entry;
        entry["name"] = trie.name();
        entry["level_max"] = trie.level_max();
        json ngrams = json::object();
        for (const auto& [term, child] : trie.root().children)
            ngrams[term] = node_to_json(child);
        entry["ngrams"] = std::move(ngrams);
        categories.push_back(std::move(entry));
    }
    j["categories"] = std::move(categories);

    return j.dump(2);
}

void save_model(const Model& model, const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write model file '" + destination.string() + "'");
    out << serialize_model(model) << '\n';
    out.flush();
    if (!out)
        throw IoError("failed while writing model file '" + destination.string() + "'");
}

Model parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CorruptModelError(std::string("model file is not valid JSON: ") + e.what());
    }

    try {
        if (!j.is_object() || j.value("format", std::string()) != "tss3-model")
            throw CorruptModelError("missing 'tss3-model' format header");
        const auto version = j.value("version", -1);
        if (version != kModelFormatVersion)
            throw UnsupportedVersionError("unsupported model format version " +
                                          std::to_string(version));

        const auto& hp_json = j.at("hyperparameters");
        Hyperparameters hp;
        hp.sigma = hp_json.at("sigma").get<double>();
        hp.lambda = hp_json.at("lambda").get<double>();
        hp.rho = hp_json.at("rho").get<double>();
        hp.epsilon = hp_json.at("epsilon").get<double>();
        hp.max_lvl = hp_json.at("max_lvl").get<int>();
        hp.validate();

        const auto& learned_json = j.at("learned_words");
        if (!learned_json.is_number_unsigned())
            throw CorruptModelError("learned_words must be a non-negative integer");

        std::vector<CategoryTrie> categories;
        for (const auto& entry : j.at("categories"))
            categories.push_back(parse_category(entry, hp.max_lvl));

        return Model(hp, PruneSettings{}, std::move(categories),
                     learned_json.get<std::uint64_t>());
    } catch (const json::exception& e) {
        throw CorruptModelError(std::string("malformed model file: ") + e.what());
    } catch (const ConfigurationError& e) {
        throw CorruptModelError(std::string("invalid model contents: ") + e.what());
    }
}

Model load_model(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in)
        throw IoError("cannot read model file '" + source.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("failed while reading model file '" + source.string() + "'");
    return parse_model(buffer.str());
}

}  // namespace tss3
