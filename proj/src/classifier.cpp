#include "tss3/classifier.hpp"

#include <array>
#include <utility>

#include "tss3/errors.hpp"
#include "tss3/parallel.hpp"
#include "tss3/tokenizer.hpp"
#include "tss3/valuation.hpp"

namespace tss3 {
namespace {

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

std::string_view trimmed(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\f\v");
    return s.substr(first, last - first + 1);
}

bool is_sentence_end(char c) { return c == '.' || c == '!' || c == '?'; }

// Sentences end after a run of '.', '!' or '?'; the run stays with the
// sentence so the rendered text keeps its punctuation.
void append_sentences(std::string_view paragraph, BlockNode& out) {
    std::size_t start = 0;
    std::size_t i = 0;
    auto emit = [&](std::size_t end) {
        const auto text = trimmed(paragraph.substr(start, end - start));
        if (!text.empty())
            out.children.push_back({BlockLevel::sentence, std::string(text), {}, {}});
        start = end;
    };
    while (i < paragraph.size()) {
        if (is_sentence_end(paragraph[i])) {
            while (i < paragraph.size() && is_sentence_end(paragraph[i])) ++i;
            emit(i);
        } else {
            ++i;
        }
    }
    emit(paragraph.size());
}

std::string join_words(std::span<const std::string> words) {
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) text += ' ';
        text += words[i];
    }
    return text;
}

}  // namespace

ConfidenceVector add_vectors(std::span<const ConfidenceVector> children,
                             std::size_t n_categories) {
    ConfidenceVector out(n_categories);
    for (const auto& child : children) out.add(child);
    return out;
}

BlockNode split_blocks(std::string_view text) {
    BlockNode doc{BlockLevel::document, std::string(text), {}, {}};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? text.size() : nl;
        const auto line = trimmed(text.substr(pos, end - pos));
        if (!is_blank(line)) {
            BlockNode paragraph{BlockLevel::paragraph, std::string(line), {}, {}};
            append_sentences(line, paragraph);
            if (!paragraph.children.empty()) doc.children.push_back(std::move(paragraph));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return doc;
}

Classifier::Classifier(const Model& model) : model_(&model) {
    model.hyperparameters().validate();
    if (model.category_count() < 2)
        throw ConfigurationError("classification needs a model with at least 2 categories");
    op_sentence_ = op_paragraph_ = op_document_ = add_vectors;
}

void Classifier::set_summary_operators(SummaryOperator sentence_level,
                                       SummaryOperator paragraph_level,
                                       SummaryOperator document_level) {
    op_sentence_ = std::move(sentence_level);
    op_paragraph_ = std::move(paragraph_level);
    op_document_ = std::move(document_level);
}

BestNgram Classifier::best_ngram(std::size_t category, std::span<const std::string> words,
                                 std::size_t start) const {
    const auto& hp = model_->hyperparameters();
    const BestNgram fallback{1, gv(*model_, words.subspan(start, 1), category)};

    BestNgram best = fallback;
    bool qualified = fallback.gv >= hp.epsilon;

    const TrieNode* state = &model_->category(category).root();
    std::size_t length = 0;
    while (start + length < words.size()) {
        const auto it = state->children.find(words[start + length]);
        if (it == state->children.end()) break;
        state = &it->second;
        ++length;
        const double value =
            length == 1 ? fallback.gv : gv(*model_, words.subspan(start, length), category);
        if (value >= hp.epsilon &&
            (!qualified || value > best.gv || (value == best.gv && length > best.length))) {
            best = {length, value};
            qualified = true;
        }
    }
    return qualified ? best : fallback;
}

std::vector<ParsedNgram> Classifier::parse(std::span<const std::string> words) const {
    std::vector<ParsedNgram> out;
    const std::size_t n_categories = model_->category_count();
    std::size_t pos = 0;
    while (pos < words.size()) {
        BestNgram winner{};
        bool first = true;
        for (std::size_t c = 0; c < n_categories; ++c) {
            const BestNgram candidate = best_ngram(c, words, pos);
            // highest gv wins; ties prefer the longer n-gram, then the
            // earlier-registered category (strict comparisons keep it)
            if (first || candidate.gv > winner.gv ||
                (candidate.gv == winner.gv && candidate.length > winner.length)) {
                winner = candidate;
                first = false;
            }
        }
        out.push_back({pos, winner.length});
        pos += winner.length;
    }
    return out;
}

std::vector<Classifier::RecognizedNgram> Classifier::recognize(
    std::span<const LexicalUnit> units) const {
    std::vector<RecognizedNgram> out;
    std::vector<std::string> run;
    auto flush_run = [&] {
        if (run.empty()) return;
        const std::span<const std::string> words(run);
        for (const auto& g : parse(words)) {
            const auto slice = words.subspan(g.start, g.length);
            out.push_back({join_words(slice), gv_vector(*model_, slice)});
        }
        run.clear();
    };
    for (const auto& unit : units) {
        if (unit.is_word()) {
            run.push_back(unit.text);
        } else {
            // recognition never crosses non-word units, mirroring the
            // cursor resets applied at learning time
            flush_run();
        }
    }
    flush_run();
    return out;
}

ConfidenceVector Classifier::classify_sentence(std::span<const LexicalUnit> units) const {
    std::vector<ConfidenceVector> cvs;
    for (auto& g : recognize(units)) cvs.push_back(std::move(g.confidence));
    return op_sentence_(cvs, model_->category_count());
}

ConfidenceVector Classifier::classify_sentence(std::string_view sentence) const {
    const auto units = tokenize(sentence);
    return classify_sentence(std::span<const LexicalUnit>(units));
}

Classifier::DocumentResult Classifier::classify_document(std::string_view text) const {
    const std::size_t n = model_->category_count();
    BlockNode doc = split_blocks(text);

    std::vector<ConfidenceVector> paragraph_cvs;
    paragraph_cvs.reserve(doc.children.size());
    for (auto& paragraph : doc.children) {
        std::vector<ConfidenceVector> sentence_cvs;
        sentence_cvs.reserve(paragraph.children.size());
        for (auto& sentence : paragraph.children) {
            const auto units = tokenize(sentence.content);
            std::vector<ConfidenceVector> ngram_cvs;
            for (auto& g : recognize(units)) {
                ngram_cvs.push_back(g.confidence);
                sentence.children.push_back(
                    {BlockLevel::ngram, std::move(g.text), std::move(g.confidence), {}});
            }
            sentence.confidence = op_sentence_(ngram_cvs, n);
            sentence_cvs.push_back(sentence.confidence);
        }
        paragraph.confidence = op_paragraph_(sentence_cvs, n);
        paragraph_cvs.push_back(paragraph.confidence);
    }
    doc.confidence = op_document_(paragraph_cvs, n);
    return {doc.confidence, std::move(doc)};
}

AccumulatorState Classifier::accumulate(AccumulatorState state, std::string_view new_text) const {
    const std::size_t n = model_->category_count();
    if (state.accumulated.empty()) state.accumulated = ConfidenceVector(n);
    if (state.accumulated.size() != n)
        throw ConfigurationError("accumulate: state built against a different model");

    std::array<ConfidenceVector, 2> fold{std::move(state.accumulated),
                                         classify_document(new_text).confidence};
    state.accumulated = op_document_(fold, n);
    state.items_seen += 1;
    return state;
}

std::size_t Classifier::predict(const ConfidenceVector& v) const {
    if (v.size() != model_->category_count())
        throw ConfigurationError("predict: vector size does not match the model");
    return argmax_index(v);
}

const std::string& Classifier::predict_label(const ConfidenceVector& v) const {
    return model_->category_name(predict(v));
}

std::vector<ConfidenceVector> classify_documents(const Classifier& classifier,
                                                 std::span<const std::string> texts,
                                                 int threads) {
    std::vector<ConfidenceVector> out(texts.size());
    detail::run_indexed(texts.size(), threads, [&](std::size_t i) {
        out[i] = classifier.classify_document(texts[i]).confidence;
    });
    return out;
}

}  // namespace tss3
