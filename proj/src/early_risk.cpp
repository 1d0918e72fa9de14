#include "tss3/early_risk.hpp"

#include <cmath>
#include <stdexcept>

#include "tss3/errors.hpp"
#include "tss3/parallel.hpp"

namespace tss3 {

double latency_cost(std::size_t k, int o) {
    // 1 - 1/(1+e^(k-o)) rewritten as a logistic of (k-o); the exp of the
    // *negated* gap keeps large k from overflowing.
    return 1.0 / (1.0 + std::exp(static_cast<double>(o) - static_cast<double>(k)));
}

double erde(const StreamDecision& d, bool truth_positive, const ErdeParams& params) {
    const bool decided_positive = d.decision == Decision::positive;
    if (decided_positive && !truth_positive) return params.c_fp;
    if (!decided_positive && truth_positive) return params.c_fn;
    if (decided_positive && truth_positive) return latency_cost(d.k, params.o) * params.c_tp;
    return 0.0;
}

Trigger decide(const AccumulatorState& state, bool is_last, std::size_t positive_index,
               std::size_t negative_index) {
    if (positive_index == negative_index || positive_index >= state.accumulated.size() ||
        negative_index >= state.accumulated.size())
        throw std::invalid_argument("decide: positive/negative indices are invalid");
    if (state.accumulated[positive_index] > state.accumulated[negative_index])
        return Trigger::positive;
    return is_last ? Trigger::negative : Trigger::wait;
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n_items,
                                                              std::size_t n_chunks) {
    if (n_chunks == 0) throw std::invalid_argument("chunk_ranges: need at least one chunk");
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    ranges.reserve(n_chunks);
    const std::size_t base = n_items / n_chunks;
    const std::size_t extra = n_items % n_chunks;
    std::size_t begin = 0;
    for (std::size_t j = 0; j < n_chunks; ++j) {
        const std::size_t len = base + (j < extra ? 1 : 0);
        ranges.emplace_back(begin, begin + len);
        begin += len;
    }
    return ranges;
}

namespace {

StreamDecision simulate_subject(const Classifier& classifier, const Subject& subject,
                                const SimulationOptions& options, std::size_t positive_index,
                                std::size_t negative_index) {
    AccumulatorState state;
    state.accumulated = ConfidenceVector(classifier.model().category_count());

    const auto ranges = chunk_ranges(subject.writings.size(), options.chunks);
    for (std::size_t j = 0; j < ranges.size(); ++j) {
        for (std::size_t w = ranges[j].first; w < ranges[j].second; ++w)
            state = classifier.accumulate(std::move(state), subject.writings[w]);

        const bool is_last = j + 1 == ranges.size();
        const Trigger trigger = decide(state, is_last, positive_index, negative_index);
        if (trigger == Trigger::wait) continue;

        const std::size_t k =
            options.k_unit == KUnit::writings ? state.items_seen : j + 1;
        return {trigger == Trigger::positive ? Decision::positive : Decision::negative, k,
                j + 1};
    }
    // not reachable: the last chunk always decides
    return {Decision::negative, subject.writings.size(), options.chunks};
}

}  // namespace

SimulationResult run_stream_simulation(const Classifier& classifier,
                                       std::span<const Subject> subjects,
                                       const SimulationOptions& options) {
    if (subjects.empty()) throw std::invalid_argument("simulate: empty subject set");
    if (options.chunks == 0) throw std::invalid_argument("simulate: chunks must be >= 1");

    const Model& model = classifier.model();
    if (model.category_count() != 2)
        throw ConfigurationError("stream simulation needs a binary (2-category) model");
    const auto positive = model.category_index(options.positive_category);
    if (!positive)
        throw ConfigurationError("positive category '" + options.positive_category +
                                 "' is not part of the model");
    const std::size_t positive_index = *positive;
    const std::size_t negative_index = 1 - positive_index;

    for (const auto& subject : subjects) {
        if (subject.writings.empty())
            throw std::invalid_argument("subject '" + subject.id + "' has no writings");
    }

    SimulationResult result;
    result.decisions.resize(subjects.size());
    detail::run_indexed(subjects.size(), options.threads, [&](std::size_t i) {
        result.decisions[i] =
            simulate_subject(classifier, subjects[i], options, positive_index, negative_index);
    });
    return result;
}

StreamMetrics compute_metrics(std::span<const StreamDecision> decisions,
                              std::span<const Subject> subjects, const ErdeParams& params) {
    if (decisions.size() != subjects.size())
        throw std::invalid_argument("compute_metrics: decisions/subjects size mismatch");
    if (decisions.empty()) throw std::invalid_argument("compute_metrics: empty input");

    StreamMetrics metrics;
    double total = 0.0;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        const bool truth = subjects[i].truth_positive;
        const bool positive = decisions[i].decision == Decision::positive;
        total += erde(decisions[i], truth, params);
        if (positive && truth) ++metrics.tp;
        else if (positive && !truth) ++metrics.fp;
        else if (!positive && truth) ++metrics.fn;
        else ++metrics.tn;
    }
    metrics.mean_erde = total / static_cast<double>(decisions.size());
    const double tp = static_cast<double>(metrics.tp);
    metrics.precision = metrics.tp + metrics.fp ? tp / (metrics.tp + metrics.fp) : 0.0;
    metrics.recall = metrics.tp + metrics.fn ? tp / (metrics.tp + metrics.fn) : 0.0;
    metrics.f1 = metrics.precision + metrics.recall > 0.0
                     ? 2.0 * metrics.precision * metrics.recall /
                           (metrics.precision + metrics.recall)
                     : 0.0;
    return metrics;
}

SimulateOutcome simulate(const Classifier& classifier, std::span<const Subject> subjects,
                         const SimulationOptions& options, const ErdeParams& params) {
    SimulateOutcome outcome;
    outcome.simulation = run_stream_simulation(classifier, subjects, options);
    outcome.metrics = compute_metrics(outcome.simulation.decisions, subjects, params);
    return outcome;
}

}  // namespace tss3
