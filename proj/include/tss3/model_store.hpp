#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tss3/model.hpp"

namespace tss3 {

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON snapshot of a full model (hyperparameters, categories in
// registration order, tries, per-level maxima, learned-word counter).
// Object keys and trie children serialize in lexicographic order, so equal
// models produce byte-identical text.
std::string serialize_model(const Model&);

// serialize_model to a file; throws IoError with the path on failure.
void save_model(const Model&, const std::filesystem::path&);

// All-or-nothing reconstruction. Validates the version and the structural
// invariants (level bounds, frequency positivity, child frequency <= parent
// frequency, stored level maxima) before returning; throws
// UnsupportedVersionError or CorruptModelError naming the first offender.
Model parse_model(std::string_view text);

// parse_model from a file; throws IoError with the path when unreadable.
Model load_model(const std::filesystem::path&);

}  // namespace tss3
