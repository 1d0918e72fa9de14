#include <doctest.h>

#include <cmath>
#include <random>

#include "support/counting_oracle.hpp"
#include "support/synthetic.hpp"
#include "tss3/errors.hpp"
#include "tss3/valuation.hpp"

using namespace tss3;
using namespace tss3::testing;

namespace {

std::vector<std::string> gram(std::initializer_list<const char*> words) {
    std::vector<std::string> out;
    for (const char* w : words) out.emplace_back(w);
    return out;
}

// two categories trained on the first-figure sentence vs unrelated filler
Model fig_model(double sigma) {
    Hyperparameters hp;
    hp.sigma = sigma;
    Model model(hp, PruneSettings{.enabled = false});
    model.learn_document("Mobile APIs, for mobile developers", "cat");
    model.learn_document("totally unrelated filler words here", "other");
    return model;
}

// balanced pair of categories: `common` has identical counts and identical
// per-level maxima on both sides; `alpha`/`beta` are exclusive
Model balanced_model(int repeats = 10) {
    Model model(Hyperparameters{}, PruneSettings{.enabled = false});
    for (int i = 0; i < repeats; ++i) {
        model.learn_document("common common common alpha.", "first");
        model.learn_document("common common common beta.", "second");
    }
    return model;
}

}  // namespace

TEST_CASE("lv is the smoothed frequency ratio") {
    const auto model = fig_model(1.0);
    const std::size_t cat = *model.category_index("cat");

    // tf(apis)=1 against max tf 2
    CHECK(lv(model, gram({"apis"}), cat) == doctest::Approx(0.5).epsilon(1e-12));
    // the most frequent unigram scores 1 for any sigma
    CHECK(lv(model, gram({"mobile"}), cat) == 1.0);
    CHECK(lv(fig_model(0.455), gram({"mobile"}), 0) == 1.0);
    // unseen n-grams score 0
    CHECK(lv(model, gram({"quantum"}), cat) == 0.0);
    CHECK(lv(model, gram({"mobile", "quantum"}), cat) == 0.0);
}

TEST_CASE("lv validates the n-gram length") {
    const auto model = fig_model(1.0);
    const std::vector<std::string> empty;
    CHECK_THROWS_AS(lv(model, empty, 0), std::invalid_argument);
    CHECK_THROWS_AS(lv(model, gram({"a", "b", "c", "d"}), 0), std::invalid_argument);
}

TEST_CASE("lv matches direct recomputation from raw counts") {
    std::mt19937 rng(31);
    const auto model = make_two_category_model(rng);
    const double sigma = model.hyperparameters().sigma;

    for (std::size_t cat = 0; cat < 2; ++cat) {
        for (const char* probe : {"alpha3", "beta7", "w2", "w11", "missing"}) {
            const auto g = gram({probe});
            const double expected =
                model.tf(g, cat) == 0
                    ? 0.0
                    : std::pow(static_cast<double>(model.tf(g, cat)) /
                                   static_cast<double>(model.max_tf(1, cat)),
                               sigma);
            CHECK(lv(model, g, cat) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("smaller sigma lifts sub-maximal ratios") {
    const auto low = fig_model(0.3);
    const auto high = fig_model(0.9);
    const auto g = gram({"apis"});  // ratio 1/2
    CHECK(lv(low, g, 0) >= lv(high, g, 0));
    CHECK(lv(low, g, 0) > 0.5);
    CHECK(lv(high, g, 0) < 0.7);
}

TEST_CASE("sg is near zero on a flat profile") {
    const auto model = balanced_model();
    const auto g = gram({"common"});
    CHECK(sg(model, g, 0) <= 0.05);
    CHECK(sg(model, g, 1) <= 0.05);
    CHECK(sg(model, g, 0) == doctest::Approx(0.01798620996209156).epsilon(1e-9));
}

TEST_CASE("sg saturates for a category-exclusive n-gram") {
    const auto model = balanced_model();
    CHECK(sg(model, gram({"alpha"}), 0) >= 0.95);
    CHECK(sg(model, gram({"beta"}), 1) >= 0.95);
    CHECK(sg(model, gram({"alpha"}), 1) <= 0.05);
}

TEST_CASE("sg stays in range and is deterministic") {
    std::mt19937 rng(37);
    const auto model = make_two_category_model(rng);
    std::mt19937 rng2(37);
    const auto again = make_two_category_model(rng2);

    for (const char* probe : {"alpha1", "beta2", "w5", "w0"}) {
        const auto g = gram({probe});
        for (std::size_t cat = 0; cat < 2; ++cat) {
            const double value = sg(model, g, cat);
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
            CHECK(sg(again, g, cat) == value);  // deterministic
        }
    }
}

TEST_CASE("sg only depends on the category's profile, not registration order") {
    Model ab(Hyperparameters{}, PruneSettings{.enabled = false});
    Model ba(Hyperparameters{}, PruneSettings{.enabled = false});
    for (int i = 0; i < 6; ++i) {
        ab.learn_document("common common alpha.", "first");
        ab.learn_document("common common beta.", "second");
        ba.learn_document("common common beta.", "second");
        ba.learn_document("common common alpha.", "first");
    }
    REQUIRE(*ab.category_index("first") != *ba.category_index("first"));
    for (const char* probe : {"alpha", "beta", "common"}) {
        const auto g = gram({probe});
        for (const char* name : {"first", "second"}) {
            CHECK(sg(ab, g, *ab.category_index(name)) == sg(ba, g, *ba.category_index(name)));
            CHECK(gv(ab, g, *ab.category_index(name)) == gv(ba, g, *ba.category_index(name)));
        }
    }
}

TEST_CASE("sn rewards exclusivity and rho scales the sanction") {
    const auto model = balanced_model();
    // alpha is significant only in its own category
    CHECK(sn(model, gram({"alpha"}), 0) == 1.0);
    CHECK(sn(model, gram({"alpha"}), 1) == 1.0);

    // rho = 0 disables the sanction entirely
    Hyperparameters hp;
    hp.rho = 0.0;
    Model no_sanction(hp, PruneSettings{.enabled = false});
    for (int i = 0; i < 10; ++i) {
        no_sanction.learn_document("common common common alpha.", "first");
        no_sanction.learn_document("common common common beta.", "second");
    }
    CHECK(sn(no_sanction, gram({"common"}), 0) == 1.0);
    CHECK(sn(no_sanction, gram({"alpha"}), 0) == 1.0);
}

TEST_CASE("sn bottoms out when a term is significant everywhere") {
    // with lambda = 0 an exactly flat profile makes both categories
    // borderline-significant, which is the maximal sharing case
    Hyperparameters hp;
    hp.lambda = 0.0;
    Model model(hp, PruneSettings{.enabled = false});
    for (int i = 0; i < 5; ++i) {
        model.learn_document("common common common alpha.", "first");
        model.learn_document("common common common beta.", "second");
    }
    CHECK(sn(model, gram({"common"}), 0) == 0.0);
    CHECK(sn(model, gram({"common"}), 1) == 0.0);
}

TEST_CASE("valuation requires at least two categories") {
    Model model(Hyperparameters{}, PruneSettings{.enabled = false});
    model.learn_document("lonely category text", "only");
    CHECK_THROWS_AS(sg(model, gram({"lonely"}), 0), ConfigurationError);
    CHECK_THROWS_AS(sn(model, gram({"lonely"}), 0), ConfigurationError);
    CHECK_THROWS_AS(gv_vector(model, gram({"lonely"})), ConfigurationError);
}

TEST_CASE("gv factors multiply exactly") {
    std::mt19937 rng(41);
    const auto model = make_two_category_model(rng);
    for (const char* probe : {"alpha0", "beta4", "w7", "w3", "nothere"}) {
        const auto g = gram({probe});
        for (std::size_t cat = 0; cat < 2; ++cat) {
            const double product = lv(model, g, cat) * sg(model, g, cat) * sn(model, g, cat);
            CHECK(gv(model, g, cat) == product);
            CHECK(gv(model, g, cat) >= 0.0);
            CHECK(gv(model, g, cat) <= 1.0);
        }
    }
}

TEST_CASE("stop-word-like tokens get a negligible gv") {
    const auto model = balanced_model();
    CHECK(gv(model, gram({"common"}), 0) < 0.05);
    CHECK(gv(model, gram({"common"}), 1) < 0.05);
}

TEST_CASE("an exclusive word keeps its local value") {
    const auto model = balanced_model();
    // sg saturates to 1 and no sanction applies, so gv equals lv; lv is
    // (1/3)^sigma by hand count (alpha once vs common three times)
    const double expected_lv = std::pow(1.0 / 3.0, model.hyperparameters().sigma);
    CHECK(expected_lv == doctest::Approx(0.6066103683285415).epsilon(1e-12));
    CHECK(gv(model, gram({"alpha"}), 0) == doctest::Approx(expected_lv).epsilon(1e-9));
    CHECK(gv(model, gram({"alpha"}), 1) == 0.0);
}

TEST_CASE("gv_vector lines up with per-category gv in registration order") {
    const auto model = balanced_model();
    const auto g = gram({"alpha"});
    const auto vec = gv_vector(model, g);
    REQUIRE(vec.size() == 2);
    CHECK(vec[0] == gv(model, g, 0));
    CHECK(vec[1] == gv(model, g, 1));

    // unseen n-grams give the zero vector
    const auto zero = gv_vector(model, gram({"unseen", "pair"}));
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);

    // stop-word-like tokens give a near-zero vector
    const auto flat = gv_vector(model, gram({"common"}));
    CHECK(flat[0] < 0.05);
    CHECK(flat[1] < 0.05);
}

TEST_CASE("all valuation outputs stay in the unit interval") {
    std::mt19937 rng(43);
    const auto model = make_two_category_model(rng);
    const auto units = tokenize(random_text(rng, 200, 12, 0.1));
    const auto counts = count_ngrams(units, 3);
    for (const auto& [g, count] : counts) {
        // mixed-alphabet probes, most unseen by the model
        for (std::size_t cat = 0; cat < 2; ++cat) {
            for (double value : {lv(model, g, cat), sg(model, g, cat), sn(model, g, cat),
                                 gv(model, g, cat)}) {
                CHECK(value >= 0.0);
                CHECK(value <= 1.0);
            }
        }
    }
}

TEST_CASE("hyperparameter validation rejects out-of-range values") {
    Hyperparameters hp;
    hp.sigma = 0.0;
    CHECK_THROWS_AS(hp.validate(), ConfigurationError);
    hp = {};
    hp.sigma = 1.5;
    CHECK_THROWS_AS(hp.validate(), ConfigurationError);
    hp = {};
    hp.lambda = -1.0;
    CHECK_THROWS_AS(hp.validate(), ConfigurationError);
    hp = {};
    hp.max_lvl = 0;
    CHECK_THROWS_AS(hp.validate(), ConfigurationError);
    hp = {};
    hp.max_lvl = 11;
    CHECK_THROWS_AS(hp.validate(), ConfigurationError);
    hp = {};
    CHECK_NOTHROW(hp.validate());
}
