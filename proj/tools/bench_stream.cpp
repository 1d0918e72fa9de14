// Compares the serial reference loops against the OpenMP kernels on a
// synthetic workload: batch document classification and the chunked
// subject-stream simulation. Both paths must produce identical results;
// timings show what the parallel fan-out buys on this machine.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tss3/classifier.hpp"
#include "tss3/early_risk.hpp"
#include "tss3/model.hpp"

using namespace tss3;
namespace chrono = std::chrono;

namespace {

double ms_since(chrono::steady_clock::time_point start) {
    return chrono::duration<double, std::milli>(chrono::steady_clock::now() - start).count();
}

std::string random_words(std::mt19937& rng, std::size_t n, std::size_t vocab,
                         const char* prefix) {
    std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
        text += prefix + std::to_string(pick(rng));
        text += (i % 13 == 12) ? ". " : " ";
    }
    text += '.';
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_subjects = 400;
    std::size_t n_docs = 2000;
    if (argc > 1) n_subjects = std::stoul(argv[1]);
    if (argc > 2) n_docs = std::stoul(argv[2]);

    std::mt19937 rng(20240501);

    std::printf("training synthetic model...\n");
    Model model(Hyperparameters{}, PruneSettings{.enabled = false});
    for (int d = 0; d < 40; ++d) {
        // identical shared text on both sides keeps the filler neutral;
        // only the pos*/neg* words separate the categories
        const std::string shared = random_words(rng, 1200, 300, "shared");
        model.learn_document(shared + " " + random_words(rng, 400, 150, "pos"), "positive");
        model.learn_document(shared + " " + random_words(rng, 400, 150, "neg"), "negative");
    }
    const Classifier classifier(model);
    std::printf("  %llu trie nodes, %llu words\n",
                static_cast<unsigned long long>(model.node_count()),
                static_cast<unsigned long long>(model.learned_words()));

#ifdef _OPENMP
    std::printf("OpenMP pool: %d threads\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both runs are serial\n");
#endif

    // batch classification
    std::vector<std::string> docs;
    docs.reserve(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) {
        docs.push_back(random_words(rng, 120, 300, "shared") + " " +
                       random_words(rng, 20, 150, i % 2 ? "pos" : "neg"));
    }
    auto t0 = chrono::steady_clock::now();
    const auto serial_cvs = classify_documents(classifier, docs, 1);
    const double classify_serial_ms = ms_since(t0);

    t0 = chrono::steady_clock::now();
    const auto parallel_cvs = classify_documents(classifier, docs, 0);
    const double classify_parallel_ms = ms_since(t0);

    bool classify_equal = serial_cvs.size() == parallel_cvs.size();
    for (std::size_t i = 0; classify_equal && i < serial_cvs.size(); ++i)
        classify_equal = serial_cvs[i] == parallel_cvs[i];

    std::printf("classify %zu docs     serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
                docs.size(), classify_serial_ms, classify_parallel_ms,
                classify_serial_ms / classify_parallel_ms,
                classify_equal ? "results identical" : "RESULTS DIFFER");

    // subject-stream simulation
    std::vector<Subject> subjects;
    subjects.reserve(n_subjects);
    for (std::size_t s = 0; s < n_subjects; ++s) {
        Subject subject;
        subject.truth_positive = s % 2 == 0;
        subject.id = "s" + std::to_string(s);
        for (int w = 0; w < 20; ++w) {
            subject.writings.push_back(
                random_words(rng, 80, 300, "shared") + " " +
                random_words(rng, 10, 150, subject.truth_positive ? "pos" : "neg"));
        }
        subjects.push_back(std::move(subject));
    }

    SimulationOptions serial_opts{.chunks = 10};
    serial_opts.threads = 1;
    t0 = chrono::steady_clock::now();
    const auto serial_sim = run_stream_simulation(classifier, subjects, serial_opts);
    const double sim_serial_ms = ms_since(t0);

    SimulationOptions parallel_opts = serial_opts;
    parallel_opts.threads = 0;
    t0 = chrono::steady_clock::now();
    const auto parallel_sim = run_stream_simulation(classifier, subjects, parallel_opts);
    const double sim_parallel_ms = ms_since(t0);

    bool sim_equal = serial_sim.decisions.size() == parallel_sim.decisions.size();
    for (std::size_t i = 0; sim_equal && i < serial_sim.decisions.size(); ++i)
        sim_equal = serial_sim.decisions[i] == parallel_sim.decisions[i];

    std::printf("simulate %zu subjects serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
                subjects.size(), sim_serial_ms, sim_parallel_ms,
                sim_serial_ms / sim_parallel_ms,
                sim_equal ? "results identical" : "RESULTS DIFFER");

    const auto metrics = compute_metrics(parallel_sim.decisions, subjects, ErdeParams{.o = 50});
    std::printf("sanity: mean ERDE_50 %.4f  precision %.3f  recall %.3f\n", metrics.mean_erde,
                metrics.precision, metrics.recall);

    return classify_equal && sim_equal ? 0 : 1;
}
