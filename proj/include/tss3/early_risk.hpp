#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tss3/classifier.hpp"

namespace tss3 {

// One monitored user: chronologically ordered writings plus ground truth.
struct Subject {
    std::string id;
    bool truth_positive = false;
    std::vector<std::string> writings;
};

// Cost model for the time-aware error metric; o is the decision deadline.
struct ErdeParams {
    int o = 50;
    double c_fp = 1.0;
    double c_fn = 1.0;
    double c_tp = 1.0;
};

enum class Decision { positive, negative };

// Final per-subject call: the decision plus how many textual items had been
// seen when it was emitted, and the 1-based chunk it happened at.
struct StreamDecision {
    Decision decision = Decision::negative;
    std::size_t k = 0;
    std::size_t chunk = 0;

    bool operator==(const StreamDecision&) const = default;
};

enum class Trigger { positive, negative, wait };

// Sigmoid latency cost 1 - 1/(1 + e^(k-o)); exactly 0.5 at k == o and
// numerically stable for any k.
double latency_cost(std::size_t k, int o);

// Per-decision metric value: c_fp for a false positive, c_fn for a false
// negative, lc_o(k) * c_tp for a true positive, 0 for a true negative.
double erde(const StreamDecision&, bool truth_positive, const ErdeParams&);

// Early-classification policy: positive as soon as the accumulated positive
// confidence strictly exceeds the negative one; forced negative on the last
// chunk, otherwise wait.
Trigger decide(const AccumulatorState&, bool is_last, std::size_t positive_index,
               std::size_t negative_index);

// Contiguous near-equal [begin, end) ranges partitioning n_items; sizes are
// ceil-divided so earlier chunks are never smaller than later ones.
std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n_items,
                                                              std::size_t n_chunks);

enum class KUnit { writings, chunks };

struct SimulationOptions {
    std::size_t chunks = 10;
    KUnit k_unit = KUnit::writings;
    std::string positive_category = "positive";
    int threads = 1;  // 1 = serial reference loop, 0 = OpenMP default pool
};

struct StreamMetrics {
    double mean_erde = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

struct SimulationResult {
    std::vector<StreamDecision> decisions;  // subject order
};

// Runs the chunked stream protocol for every subject against a read-only
// binary model: writings are split into `chunks` contiguous parts, fed in
// order through the accumulator, and `decide` runs after each chunk. A
// positive decision is final; subjects never positive are forced negative
// after the last chunk. Subjects are independent, so with threads != 1 they
// are fanned out to an OpenMP loop and written back by index — results are
// identical to the serial path.
SimulationResult run_stream_simulation(const Classifier&, std::span<const Subject>,
                                       const SimulationOptions&);

// ERDE mean plus precision/recall/F1 on the positive class, reduced in
// subject order.
StreamMetrics compute_metrics(std::span<const StreamDecision>, std::span<const Subject>,
                              const ErdeParams&);

struct SimulateOutcome {
    SimulationResult simulation;
    StreamMetrics metrics;
};

// One-call convenience: simulation plus metrics for a single deadline.
SimulateOutcome simulate(const Classifier&, std::span<const Subject>,
                         const SimulationOptions&, const ErdeParams&);

}  // namespace tss3
