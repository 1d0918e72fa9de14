// Command-line front end: corpus training, document classification with
// optional HTML explanations, and chunked early-risk stream evaluation.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 internal
// error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tss3/classifier.hpp"
#include "tss3/early_risk.hpp"
#include "tss3/errors.hpp"
#include "tss3/model.hpp"
#include "tss3/model_store.hpp"
#include "tss3/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tss3::IoError("cannot read file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw tss3::IoError("failed while reading '" + path.string() + "'");
    return buffer.str();
}

struct TrainArgs {
    std::string corpus_dir;
    std::string model_out;
    double sigma = 0.455;
    double lambda = 1.0;
    double rho = 1.0;
    double epsilon = 0.01;
    int max_lvl = 3;
    bool no_prune = false;
    std::uint64_t prune_interval = 1'000'000;
    std::uint64_t prune_threshold = 10;
};

int cmd_train(const TrainArgs& args) {
    tss3::Hyperparameters hp;
    hp.sigma = args.sigma;
    hp.lambda = args.lambda;
    hp.rho = args.rho;
    hp.epsilon = args.epsilon;
    hp.max_lvl = args.max_lvl;
    try {
        hp.validate();
    } catch (const tss3::ConfigurationError& e) {
        throw UsageError(e.what());
    }
    tss3::PruneSettings prune{!args.no_prune, args.prune_interval, args.prune_threshold};

    const fs::path root(args.corpus_dir);
    if (!fs::is_directory(root))
        throw DataError("corpus directory '" + root.string() + "' does not exist");

    // categories are the sorted subdirectory names; sorting fixes the
    // registration order so repeated runs build identical models
    std::vector<fs::path> category_dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) category_dirs.push_back(entry.path());
    }
    std::sort(category_dirs.begin(), category_dirs.end());
    if (category_dirs.size() < 2)
        throw UsageError("training needs at least 2 category directories under '" +
                         root.string() + "'");

    tss3::Model model(hp, prune);
    for (const auto& dir : category_dirs) {
        const std::string category = dir.filename().string();
        model.add_category(category);

        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty())
            std::cerr << "warning: category '" << category << "' has no documents\n";

        std::size_t documents = 0;
        const std::uint64_t words_before = model.learned_words();
        for (const auto& file : files) {
            model.learn_document(read_file(file), category);
            ++documents;
        }
        std::cout << "category " << category << ": " << documents << " documents, "
                  << (model.learned_words() - words_before) << " words\n";
    }

    tss3::save_model(model, args.model_out);
    std::cout << "saved " << args.model_out << " (" << model.category_count()
              << " categories, " << model.node_count() << " nodes, "
              << model.learned_words() << " words)\n";
    return 0;
}

struct ClassifyArgs {
    std::string model_in;
    std::string input;  // path or "-" for stdin
    std::string text;   // literal input, wins over the path
    std::string explain_out;
    std::string explain_category;
};

int cmd_classify(const ClassifyArgs& args) {
    const tss3::Model model = tss3::load_model(args.model_in);
    const tss3::Classifier classifier(model);

    std::string input;
    if (!args.text.empty()) {
        input = args.text;
    } else if (args.input.empty()) {
        throw UsageError("classify needs an input file, '-' for stdin, or --text");
    } else if (args.input == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        input = buffer.str();
    } else {
        input = read_file(args.input);
    }

    const auto result = classifier.classify_document(input);
    bool all_zero = true;
    for (std::size_t c = 0; c < result.confidence.size(); ++c)
        if (result.confidence[c] != 0.0) all_zero = false;
    if (all_zero)
        std::cerr << "warning: no learned n-gram matched; prediction falls back to the "
                     "first category\n";

    const std::size_t predicted = classifier.predict(result.confidence);
    std::cout << "predicted: " << model.category_name(predicted) << "\n";
    std::cout << "confidence:";
    for (std::size_t c = 0; c < model.category_count(); ++c)
        std::cout << ' ' << model.category_name(c) << '=' << fmt(result.confidence[c]);
    std::cout << "\n";

    if (!args.explain_out.empty()) {
        std::size_t category = predicted;
        if (!args.explain_category.empty()) {
            const auto idx = model.category_index(args.explain_category);
            if (!idx)
                throw UsageError("explain category '" + args.explain_category +
                                 "' is not part of the model");
            category = *idx;
        }
        const auto html = tss3::render_html_report(classifier, result, category);
        std::ofstream out(args.explain_out, std::ios::binary | std::ios::trunc);
        if (!out) throw tss3::IoError("cannot write report '" + args.explain_out + "'");
        out << html;
        std::cout << "explanation: " << args.explain_out << "\n";
    }
    return 0;
}

struct EvaluateArgs {
    std::string model_in;
    std::string subjects_file;
    std::size_t chunks = 10;
    std::vector<int> erde_o{5, 50};
    double c_fp = 1.0;
    double c_fn = 1.0;
    double c_tp = 1.0;
    std::string k_unit = "writings";
    std::string positive_class = "positive";
    int threads = 0;
    bool json_output = false;
};

std::vector<tss3::Subject> read_subjects(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw tss3::IoError("cannot read subjects file '" + path.string() + "'");

    std::vector<tss3::Subject> subjects;
    std::vector<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = path.string() + " line " + std::to_string(line_no);
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(where + ": " + e.what());
        }
        if (!record.is_object() || !record.contains("id") || !record.contains("label") ||
            !record.contains("writings"))
            throw DataError(where + ": record needs 'id', 'label' and 'writings'");

        tss3::Subject subject;
        try {
            subject.id = record.at("id").get<std::string>();
            const auto label = record.at("label").get<std::string>();
            if (label != "positive" && label != "negative")
                throw DataError(where + ": label must be 'positive' or 'negative'");
            subject.truth_positive = label == "positive";
            for (const auto& writing : record.at("writings"))
                subject.writings.push_back(writing.get<std::string>());
        } catch (const json::exception& e) {
            throw DataError(where + ": " + e.what());
        }
        if (subject.writings.empty())
            throw DataError(where + ": subject '" + subject.id + "' has no writings");
        if (std::find(seen_ids.begin(), seen_ids.end(), subject.id) != seen_ids.end())
            throw DataError(where + ": duplicate subject id '" + subject.id + "'");
        seen_ids.push_back(subject.id);
        subjects.push_back(std::move(subject));
    }
    if (subjects.empty()) throw DataError(path.string() + ": no subject records");
    return subjects;
}

int cmd_evaluate(const EvaluateArgs& args) {
    if (args.chunks == 0) throw UsageError("--chunks must be at least 1");
    if (args.erde_o.empty()) throw UsageError("--erde-o needs at least one deadline");
    for (int o : args.erde_o)
        if (o < 1) throw UsageError("ERDE deadlines must be positive");

    const tss3::Model model = tss3::load_model(args.model_in);
    const tss3::Classifier classifier(model);
    const auto subjects = read_subjects(args.subjects_file);

    tss3::SimulationOptions options;
    options.chunks = args.chunks;
    options.k_unit = args.k_unit == "chunks" ? tss3::KUnit::chunks : tss3::KUnit::writings;
    options.positive_category = args.positive_class;
    options.threads = args.threads;

    const auto result = tss3::run_stream_simulation(classifier, subjects, options);

    tss3::ErdeParams params{0, args.c_fp, args.c_fn, args.c_tp};
    std::vector<std::pair<int, tss3::StreamMetrics>> by_deadline;
    for (int o : args.erde_o) {
        params.o = o;
        by_deadline.emplace_back(o,
                                 tss3::compute_metrics(result.decisions, subjects, params));
    }

    if (args.json_output) {
        json out;
        out["subjects"] = json::array();
        for (std::size_t i = 0; i < subjects.size(); ++i) {
            out["subjects"].push_back(
                {{"id", subjects[i].id},
                 {"decision", result.decisions[i].decision == tss3::Decision::positive
                                  ? "positive"
                                  : "negative"},
                 {"k", result.decisions[i].k},
                 {"chunk", result.decisions[i].chunk}});
        }
        json erde = json::object();
        for (const auto& [o, metrics] : by_deadline)
            erde[std::to_string(o)] = metrics.mean_erde;
        const auto& metrics = by_deadline.front().second;
        out["metrics"] = {{"erde", erde},           {"precision", metrics.precision},
                          {"recall", metrics.recall}, {"f1", metrics.f1},
                          {"tp", metrics.tp},        {"fp", metrics.fp},
                          {"fn", metrics.fn},        {"tn", metrics.tn}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    for (std::size_t i = 0; i < subjects.size(); ++i) {
        const auto& d = result.decisions[i];
        std::cout << "subject " << subjects[i].id << ": "
                  << (d.decision == tss3::Decision::positive ? "positive" : "negative")
                  << " k=" << d.k << " chunk=" << d.chunk << "\n";
    }
    const auto& metrics = by_deadline.front().second;
    std::cout << "subjects: " << subjects.size() << " tp=" << metrics.tp
              << " fp=" << metrics.fp << " fn=" << metrics.fn << " tn=" << metrics.tn
              << "\n";
    for (const auto& [o, m] : by_deadline)
        std::cout << "ERDE_" << o << ": " << fmt(m.mean_erde) << "\n";
    std::cout << "precision: " << fmt(metrics.precision) << " recall: " << fmt(metrics.recall)
              << " f1: " << fmt(metrics.f1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"incremental n-gram text classifier for early risk detection over streams"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "train a model from a corpus directory");
    train->add_option("corpus", train_args.corpus_dir,
                      "directory with one subdirectory per category")
        ->required();
    train->add_option("-o,--model-out", train_args.model_out, "output model file")
        ->required();
    train->add_option("--sigma", train_args.sigma, "local value smoothness, (0,1]");
    train->add_option("--lambda", train_args.lambda, "significance deviation factor");
    train->add_option("--rho", train_args.rho, "sanction severity");
    train->add_option("--epsilon", train_args.epsilon, "recognizer final-state threshold");
    train->add_option("--max-lvl", train_args.max_lvl, "longest learned n-gram (1..10)");
    train->add_flag("--no-prune", train_args.no_prune, "disable the pruning schedule");
    train->add_option("--prune-interval", train_args.prune_interval,
                      "words between pruning passes");
    train->add_option("--prune-threshold", train_args.prune_threshold,
                      "drop nodes with frequency <= threshold");

    ClassifyArgs classify_args;
    auto* classify = app.add_subcommand("classify", "classify a document");
    classify->add_option("-m,--model", classify_args.model_in, "model file")->required();
    classify->add_option("input", classify_args.input, "input file ('-' for stdin)");
    classify->add_option("--text", classify_args.text, "classify this literal text instead");
    classify->add_option("--explain", classify_args.explain_out,
                         "write an HTML explanation report here");
    classify->add_option("--explain-category", classify_args.explain_category,
                         "category to paint in the report (default: predicted)");

    EvaluateArgs evaluate_args;
    auto* evaluate =
        app.add_subcommand("evaluate", "run the chunked early-risk stream protocol");
    evaluate->add_option("-m,--model", evaluate_args.model_in, "model file")->required();
    evaluate->add_option("subjects", evaluate_args.subjects_file,
                         "JSON-lines subjects file")
        ->required();
    evaluate->add_option("--chunks", evaluate_args.chunks, "history slices per subject");
    evaluate->add_option("--erde-o", evaluate_args.erde_o, "ERDE deadlines")
        ->delimiter(',');
    evaluate->add_option("--c-fp", evaluate_args.c_fp, "false positive cost");
    evaluate->add_option("--c-fn", evaluate_args.c_fn, "false negative cost");
    evaluate->add_option("--c-tp", evaluate_args.c_tp, "true positive cost");
    evaluate->add_option("--k-unit", evaluate_args.k_unit, "count 'writings' or 'chunks'")
        ->check(CLI::IsMember({"writings", "chunks"}));
    evaluate->add_option("--positive-class", evaluate_args.positive_class,
                         "model category treated as positive");
    evaluate->add_option("--threads", evaluate_args.threads,
                         "worker threads (1 = serial, 0 = auto)");
    evaluate->add_flag("--json", evaluate_args.json_output, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (train->parsed()) return cmd_train(train_args);
        if (classify->parsed()) return cmd_classify(classify_args);
        if (evaluate->parsed()) return cmd_evaluate(evaluate_args);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const tss3::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tss3::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tss3::UnsupportedVersionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tss3::CorruptModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
