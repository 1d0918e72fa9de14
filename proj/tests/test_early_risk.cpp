#include <doctest.h>

#include <random>

#include "support/synthetic.hpp"
#include "tss3/early_risk.hpp"
#include "tss3/errors.hpp"

using namespace tss3;
using namespace tss3::testing;

TEST_CASE("latency cost is the shifted sigmoid") {
    CHECK(latency_cost(5, 5) == 0.5);
    CHECK(latency_cost(50, 50) == 0.5);
    // frozen from the closed form 1 - 1/(1 + e^-20)
    CHECK(latency_cost(30, 50) == doctest::Approx(2.0611536181902037e-09).epsilon(1e-12));
    CHECK(latency_cost(1, 50) == doctest::Approx(5.242885663363464e-22).epsilon(1e-12));
    CHECK(latency_cost(500, 50) == doctest::Approx(1.0).epsilon(1e-12));
    // no overflow even for absurd gaps
    CHECK(latency_cost(1, 100000) == 0.0);
    CHECK(latency_cost(100000, 1) == 1.0);
}

TEST_CASE("latency cost increases strictly with k") {
    // beyond k - o of about 37 the cost is no longer representable below
    // 1.0 in a double, so strictness is checked over the representable band
    // and saturation beyond it
    double previous = latency_cost(1, 50);
    for (std::size_t k = 2; k <= 80; ++k) {
        const double current = latency_cost(k, 50);
        CHECK(current > previous);
        previous = current;
    }
    for (std::size_t k = 81; k <= 200; ++k) {
        const double current = latency_cost(k, 50);
        CHECK(current >= previous);
        previous = current;
    }
    CHECK(latency_cost(200, 50) == 1.0);
}

TEST_CASE("erde covers the four decision outcomes") {
    const ErdeParams params{.o = 5, .c_fp = 1.0, .c_fn = 1.0, .c_tp = 1.0};
    CHECK(erde({Decision::negative, 3, 1}, false, params) == 0.0);
    CHECK(erde({Decision::positive, 3, 1}, false, params) == 1.0);
    CHECK(erde({Decision::negative, 3, 1}, true, params) == 1.0);
    CHECK(erde({Decision::positive, 5, 2}, true, params) == 0.5);  // k == o

    const ErdeParams weighted{.o = 5, .c_fp = 0.3, .c_fn = 0.7, .c_tp = 0.4};
    CHECK(erde({Decision::positive, 9, 1}, false, weighted) == 0.3);
    CHECK(erde({Decision::negative, 9, 1}, true, weighted) == 0.7);
    CHECK(erde({Decision::positive, 5, 1}, true, weighted) == doctest::Approx(0.2));
}

TEST_CASE("erde is bounded by the largest cost") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<std::size_t> k(1, 200);
    std::uniform_int_distribution<int> o(1, 100);
    std::uniform_real_distribution<double> cost(0.0, 3.0);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int round = 0; round < 200; ++round) {
        const ErdeParams params{o(rng), cost(rng), cost(rng), cost(rng)};
        const StreamDecision d{coin(rng) ? Decision::positive : Decision::negative, k(rng), 1};
        const double value = erde(d, coin(rng) == 1, params);
        CHECK(value >= 0.0);
        CHECK(value <= std::max({params.c_fp, params.c_fn, params.c_tp}));
    }
}

TEST_CASE("an earlier true positive always costs less") {
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> o(1, 100);
    for (int round = 0; round < 200; ++round) {
        const ErdeParams params{o(rng), 1.0, 1.0, 1.0};
        // keep k - o inside the band where doubles can still tell costs apart
        std::uniform_int_distribution<std::size_t> k(
            1, static_cast<std::size_t>(params.o) + 30);
        std::size_t k1 = k(rng), k2 = k(rng);
        if (k1 == k2) continue;
        if (k1 > k2) std::swap(k1, k2);
        CHECK(erde({Decision::positive, k1, 1}, true, params) <
              erde({Decision::positive, k2, 1}, true, params));
    }
}

TEST_CASE("decide fires on strict majority of positive confidence") {
    AccumulatorState state;
    state.accumulated = ConfidenceVector(2);

    state.accumulated[0] = 0.4;
    state.accumulated[1] = 0.1;
    CHECK(decide(state, false, 0, 1) == Trigger::positive);
    CHECK(decide(state, true, 0, 1) == Trigger::positive);
    CHECK(decide(state, false, 1, 0) == Trigger::wait);  // roles swapped

    state.accumulated[0] = 0.0;
    state.accumulated[1] = 0.0;
    CHECK(decide(state, false, 0, 1) == Trigger::wait);
    CHECK(decide(state, true, 0, 1) == Trigger::negative);

    state.accumulated[0] = 0.1;
    state.accumulated[1] = 0.4;
    CHECK(decide(state, true, 0, 1) == Trigger::negative);

    CHECK_THROWS_AS(decide(state, false, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(decide(state, false, 0, 5), std::invalid_argument);
}

TEST_CASE("chunk ranges partition the writings with front-loaded sizes") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<std::size_t> n(0, 57);
    std::uniform_int_distribution<std::size_t> m(1, 12);
    for (int round = 0; round < 100; ++round) {
        const std::size_t items = n(rng);
        const std::size_t chunks = m(rng);
        const auto ranges = chunk_ranges(items, chunks);
        REQUIRE(ranges.size() == chunks);
        std::size_t expected_begin = 0;
        std::size_t previous_len = items + 1;
        for (const auto& [begin, end] : ranges) {
            CHECK(begin == expected_begin);
            CHECK(end >= begin);
            const std::size_t len = end - begin;
            CHECK(len <= previous_len);
            previous_len = len;
            expected_begin = end;
        }
        CHECK(expected_begin == items);
    }
    CHECK_THROWS_AS(chunk_ranges(10, 0), std::invalid_argument);
}

TEST_CASE("a never-triggering model yields zero error on negative subjects") {
    // symmetric training keeps both confidence components identical, so the
    // positive trigger can never fire
    std::mt19937 rng(73);
    auto stream = make_planted_stream(rng, 20, 10, 5, 2);
    const auto model = train_model(stream.training);
    const Classifier classifier(model);

    std::vector<Subject> negatives;
    for (auto& subject : stream.subjects)
        if (!subject.truth_positive) negatives.push_back(std::move(subject));

    const auto outcome = simulate(classifier, negatives, SimulationOptions{.chunks = 5}, {});
    for (const auto& decision : outcome.simulation.decisions) {
        CHECK(decision.decision == Decision::negative);
        CHECK(decision.k == 10);          // forced at the end, all writings seen
        CHECK(decision.chunk == 5);
    }
    CHECK(outcome.metrics.mean_erde == 0.0);
    CHECK(outcome.metrics.tn == negatives.size());
}

TEST_CASE("a positive decided at the first writing scores the frozen latency cost") {
    std::mt19937 rng(79);
    auto stream = make_planted_stream(rng, 2, 10, 10, 1);  // marker from chunk 1
    const auto model = train_model(stream.training);
    const Classifier classifier(model);

    std::vector<Subject> one_positive;
    for (auto& subject : stream.subjects)
        if (subject.truth_positive) {
            one_positive.push_back(std::move(subject));
            break;
        }
    REQUIRE(one_positive.size() == 1);

    const ErdeParams params{.o = 50};
    const auto outcome =
        simulate(classifier, one_positive, SimulationOptions{.chunks = 10}, params);
    REQUIRE(outcome.simulation.decisions[0].decision == Decision::positive);
    CHECK(outcome.simulation.decisions[0].k == 1);
    CHECK(outcome.metrics.mean_erde ==
          doctest::Approx(5.242885663363464e-22).epsilon(1e-12));
}

TEST_CASE("positive subjects trigger at the marker chunk and never revise") {
    std::mt19937 rng(83);
    auto stream = make_planted_stream(rng, 30, 20, 10, 2);
    const auto model = train_model(stream.training);
    const Classifier classifier(model);

    const auto outcome = simulate(classifier, stream.subjects,
                                  SimulationOptions{.chunks = 10}, ErdeParams{.o = 50});
    for (std::size_t i = 0; i < stream.subjects.size(); ++i) {
        const auto& subject = stream.subjects[i];
        const auto& decision = outcome.simulation.decisions[i];
        if (subject.truth_positive) {
            CHECK(decision.decision == Decision::positive);
            CHECK(decision.chunk == 2);  // first chunk containing the marker
            CHECK(decision.k == 4);      // 2 writings per chunk, 2 chunks seen
        } else {
            CHECK(decision.decision == Decision::negative);
            CHECK(decision.chunk == 10);
            CHECK(decision.k == 20);
        }
    }
    CHECK(outcome.metrics.precision == 1.0);
    CHECK(outcome.metrics.recall == 1.0);
    CHECK(outcome.metrics.f1 == 1.0);
    CHECK(outcome.metrics.mean_erde < 1e-12);
}

TEST_CASE("k can count chunks instead of writings") {
    std::mt19937 rng(89);
    auto stream = make_planted_stream(rng, 6, 20, 10, 2);
    const auto model = train_model(stream.training);
    const Classifier classifier(model);

    SimulationOptions options{.chunks = 10, .k_unit = KUnit::chunks};
    const auto result = run_stream_simulation(classifier, stream.subjects, options);
    for (std::size_t i = 0; i < stream.subjects.size(); ++i) {
        if (stream.subjects[i].truth_positive) {
            CHECK(result.decisions[i].k == 2);
        } else {
            CHECK(result.decisions[i].k == 10);
        }
    }
}

TEST_CASE("simulate validates its inputs") {
    std::mt19937 rng(97);
    auto stream = make_planted_stream(rng, 4, 10, 5, 2);
    const auto model = train_model(stream.training);
    const Classifier classifier(model);

    SUBCASE("empty subject set") {
        const std::vector<Subject> none;
        CHECK_THROWS_AS(run_stream_simulation(classifier, none, SimulationOptions{}),
                        std::invalid_argument);
    }
    SUBCASE("subject without writings") {
        auto subjects = stream.subjects;
        subjects[0].writings.clear();
        CHECK_THROWS_AS(run_stream_simulation(classifier, subjects, SimulationOptions{}),
                        std::invalid_argument);
    }
    SUBCASE("zero chunks") {
        CHECK_THROWS_AS(
            run_stream_simulation(classifier, stream.subjects, SimulationOptions{.chunks = 0}),
            std::invalid_argument);
    }
    SUBCASE("positive category must exist") {
        SimulationOptions options;
        options.positive_category = "missing";
        CHECK_THROWS_AS(run_stream_simulation(classifier, stream.subjects, options),
                        ConfigurationError);
    }
    SUBCASE("model must be binary") {
        auto extra = train_model(stream.training);
        extra.learn_document("third category content", "third");
        const Classifier wide(extra);
        CHECK_THROWS_AS(run_stream_simulation(wide, stream.subjects, SimulationOptions{}),
                        ConfigurationError);
    }
}

TEST_CASE("metrics count the confusion quadrants") {
    std::vector<Subject> subjects(4);
    subjects[0].truth_positive = true;
    subjects[1].truth_positive = true;
    subjects[2].truth_positive = false;
    subjects[3].truth_positive = false;
    for (auto& subject : subjects) subject.writings = {"x"};

    const std::vector<StreamDecision> decisions{
        {Decision::positive, 50, 1},   // TP at the deadline
        {Decision::negative, 10, 1},   // FN
        {Decision::positive, 3, 1},    // FP
        {Decision::negative, 10, 1},   // TN
    };
    const auto metrics = compute_metrics(decisions, subjects, ErdeParams{.o = 50});
    CHECK(metrics.tp == 1);
    CHECK(metrics.fn == 1);
    CHECK(metrics.fp == 1);
    CHECK(metrics.tn == 1);
    CHECK(metrics.precision == 0.5);
    CHECK(metrics.recall == 0.5);
    CHECK(metrics.f1 == 0.5);
    CHECK(metrics.mean_erde == doctest::Approx((0.5 + 1.0 + 1.0 + 0.0) / 4.0));
}
