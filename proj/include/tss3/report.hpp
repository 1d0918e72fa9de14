#pragma once

#include <string>

#include "tss3/classifier.hpp"

namespace tss3 {

// Self-contained HTML explanation of one classified document (inline styles
// only, no external assets, no timestamps). Paragraph, sentence and n-gram
// blocks get a background whose intensity maps linearly from zero to the
// strongest block of the same level for the selected category; multi-word
// n-grams render as a single outlined unit.
std::string render_html_report(const Classifier&, const Classifier::DocumentResult&,
                               std::size_t category);

}  // namespace tss3
