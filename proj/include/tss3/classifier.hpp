#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tss3/confidence.hpp"
#include "tss3/model.hpp"

namespace tss3 {

enum class BlockLevel { document, paragraph, sentence, ngram };

// One block of the classified document hierarchy. Leaves are the recognized
// n-grams with confidence = gv_vector; every parent's confidence is its
// level's summary operator applied to the children's confidences.
struct BlockNode {
    BlockLevel level = BlockLevel::document;
    std::string content;
    ConfidenceVector confidence;
    std::vector<BlockNode> children;
};

// Reduces child confidence vectors into the parent vector. Must return a
// zero vector of n_categories for an empty child list.
using SummaryOperator =
    std::function<ConfidenceVector(std::span<const ConfidenceVector>, std::size_t n_categories)>;

// Default summary operator: componentwise addition in input order.
ConfidenceVector add_vectors(std::span<const ConfidenceVector>, std::size_t n_categories);

// An n-gram emitted by parse, as a window into the parsed word sequence.
struct ParsedNgram {
    std::size_t start = 0;
    std::size_t length = 1;

    bool operator==(const ParsedNgram&) const = default;
};

struct BestNgram {
    std::size_t length = 1;  // words consumed from the start position
    double gv = 0.0;
};

// Streaming accumulator for one subject/document stream. `accumulated` is
// the running top-level fold of everything classified so far.
struct AccumulatorState {
    ConfidenceVector accumulated;
    std::size_t items_seen = 0;
};

// Splits raw text into the unclassified document -> paragraph -> sentence
// skeleton. Paragraphs break on newlines, sentences on '.', '!' and '?';
// blank blocks are dropped.
BlockNode split_blocks(std::string_view text);

// Read-only classification facade over a trained model with at least two
// categories. Safe to share across threads while nobody trains.
class Classifier {
public:
    // Throws ConfigurationError when the model cannot classify yet.
    explicit Classifier(const Model& model);

    const Model& model() const { return *model_; }

    // Longest-match recognition from `start` using `category`'s trie as a
    // DFA. Nodes with gv >= epsilon are final states; the one with the
    // highest gv wins (longer n-gram on ties). Falls back to the single
    // word at `start` when no state qualifies.
    BestNgram best_ngram(std::size_t category, std::span<const std::string> words,
                         std::size_t start) const;

    // Splits a word sequence into the n-grams with the highest gv across
    // all categories (ties: longer n-gram, then earlier category). The
    // emitted n-grams concatenate back to the input exactly.
    std::vector<ParsedNgram> parse(std::span<const std::string> words) const;

    ConfidenceVector classify_sentence(std::string_view sentence) const;
    ConfidenceVector classify_sentence(std::span<const LexicalUnit> units) const;

    struct DocumentResult {
        ConfidenceVector confidence;
        BlockNode blocks;
    };

    // Full two-phase classification: block hierarchy, per-sentence parse,
    // summary reduction upward. The returned tree carries every block's
    // confidence for explanation rendering.
    DocumentResult classify_document(std::string_view text) const;

    // Incremental path: classifies only new_text and folds its vector into
    // the state with the top-level operator; items_seen always advances.
    AccumulatorState accumulate(AccumulatorState state, std::string_view new_text) const;

    // Highest-confidence category index; ties go to the earliest
    // registered category.
    std::size_t predict(const ConfidenceVector&) const;
    const std::string& predict_label(const ConfidenceVector&) const;

    // Replaces the per-level reduction operators (sentence = over n-grams,
    // paragraph = over sentences, document = over paragraphs). Addition by
    // default; anything else is caller-supplied plumbing.
    void set_summary_operators(SummaryOperator sentence_level, SummaryOperator paragraph_level,
                               SummaryOperator document_level);

private:
    struct RecognizedNgram {
        std::string text;
        ConfidenceVector confidence;
    };
    std::vector<RecognizedNgram> recognize(std::span<const LexicalUnit> units) const;

    const Model* model_;
    SummaryOperator op_sentence_;
    SummaryOperator op_paragraph_;
    SummaryOperator op_document_;
};

// Classifies many documents against one read-only model. threads == 1 runs
// the serial reference loop; any other value uses the OpenMP pool (0 lets
// the runtime size it). Results land in input order either way.
std::vector<ConfidenceVector> classify_documents(const Classifier&,
                                                 std::span<const std::string> texts,
                                                 int threads = 0);

}  // namespace tss3
