#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfcr/corpus.hpp"
#include "tfcr/eval.hpp"
#include "tfcr/synthetic.hpp"
#include "tfcr/textpipe.hpp"
#include "tfcr/tfrank.hpp"

namespace {

using namespace tfcr;
using nlohmann::json;

struct RunConfig {
    std::string originals_path;
    std::string candidates_path;
    std::string out_dir = ".";
    double k1 = 1.2;
    double b = 0.75;
    double alpha = 1.0;
    std::size_t top_n = 30;
    std::uint64_t seed = 42;
    std::string variant = "tfw-bm25";
    bool lenient = false;
    bool lenient_year = false;
    bool clamp_idf = false;
    bool no_checksum = false;
    std::vector<std::size_t> ks = {5, 10, 20, 30};
};

Tokenizer make_tokenizer(const RunConfig& config) {
    if (const char* path = std::getenv("TFCR_STOPWORDS"); path != nullptr && *path != '\0') {
        return Tokenizer::from_stopword_file(path, !config.no_checksum);
    }
    return Tokenizer();
}

Bm25Params bm25_params(const RunConfig& config) {
    return Bm25Params{config.k1, config.b, config.clamp_idf};
}

Corpus load(const RunConfig& config, LoadReport* report = nullptr) {
    return load_corpus(config.originals_path, config.candidates_path, config.lenient, report);
}

void add_corpus_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--originals", config.originals_path, "Originals JSONL file")->required();
    cmd->add_option("--candidates", config.candidates_path, "Candidates JSONL file")->required();
    cmd->add_flag("--lenient", config.lenient, "Drop dangling cited_refs instead of failing");
    cmd->add_flag("--no-checksum", config.no_checksum,
                  "Skip the stopword file checksum check (with TFCR_STOPWORDS)");
}

void add_ranking_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--k1", config.k1, "BM25 k1 (default 1.2)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--b", config.b, "BM25 b (default 0.75)")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha", config.alpha, "Term-function weight factor in (0,1] (default 1.0)");
    cmd->add_option("--top-n", config.top_n, "Recommendation list length (default 30)");
    cmd->add_flag("--lenient-year", config.lenient_year,
                  "Admit candidates without a year when a cutoff is given");
    cmd->add_flag("--clamp-idf", config.clamp_idf, "Clamp negative idf values to 0");
}

int cmd_ingest(const RunConfig& config) {
    LoadReport report;
    const Corpus corpus = load(config, &report);
    const auto violations = validate_corpus(corpus);
    std::cout << "originals:  " << report.n_originals << "\n"
              << "candidates: " << report.n_candidates << "\n"
              << "paragraphs: " << report.n_paragraphs << "\n";
    if (config.lenient) std::cout << "dropped dangling refs: " << report.dropped_refs << "\n";
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
        return 1;
    }
    return 0;
}

int cmd_recommend(const RunConfig& config, const std::string& query_text, const std::string& tf_label,
                  int year_cutoff) {
    const auto tf = parse_term_function(tf_label);
    if (!tf || !is_ranking_tf(*tf)) {
        std::cerr << "error: term function must be one of: " << ranking_tf_labels() << "\n";
        return 1;
    }
    const Corpus corpus = load(config);
    const Tokenizer tokenizer = make_tokenizer(config);
    const Index index = Index::build(corpus.candidates, tokenizer);
    std::set<std::string> all_doc_ids;
    for (const auto& d : corpus.originals) all_doc_ids.insert(d.doc_id);
    const ProfileMap profiles = build_profiles(corpus, all_doc_ids);

    Query query;
    query.text = query_text;
    query.term_function = *tf;
    if (year_cutoff > 0) query.year_cutoff = year_cutoff;
    query.alpha = config.alpha;
    RecommendOptions options;
    const auto variant = parse_variant(config.variant);
    if (!variant) {
        std::cerr << "error: unknown variant '" << config.variant
                  << "' (expected plain-bm25 or tfw-bm25)\n";
        return 1;
    }
    options.variant = *variant;
    options.top_n = config.top_n;
    options.lenient_year = config.lenient_year;

    const RankedList ranked =
        recommend(query, index, profiles, corpus, tokenizer, bm25_params(config), options);
    json out = json::array();
    std::size_t rank = 1;
    for (const auto& entry : ranked) {
        const CandidateDocument* cand = corpus.find_candidate(entry.cand_id);
        out.push_back({{"rank", rank++},
                       {"cand_id", entry.cand_id},
                       {"title", cand != nullptr ? cand->title : ""},
                       {"score", entry.score},
                       {"tf_weight", entry.tf_weight}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

CrossValidateOptions cv_options(const RunConfig& config) {
    CrossValidateOptions options;
    options.ks = config.ks;
    options.top_n = config.top_n;
    options.alpha = config.alpha;
    options.seed = config.seed;
    options.lenient_year = config.lenient_year;
    return options;
}

int cmd_evaluate(const RunConfig& config) {
    const Corpus corpus = load(config);
    const EvalReport report = cross_validate(corpus, bm25_params(config), cv_options(config));

    std::filesystem::create_directories(config.out_dir);
    const auto csv_path = std::filesystem::path(config.out_dir) / "eval_report.csv";
    const auto json_path = std::filesystem::path(config.out_dir) / "eval_report.json";
    std::ofstream csv(csv_path);
    write_report_csv(report, csv);
    std::ofstream js(json_path);
    write_report_json(report, js);

    std::cout << "variant      field        k   precision recall    f1\n";
    for (const auto& row : report.rows) {
        if (row.fold != -1) continue;
        std::printf("%-12s %-12s %-3zu %.4f    %.4f    %.4f\n", row.variant.c_str(),
                    row.field.c_str(), row.k, row.precision, row.recall, row.f1);
    }
    if (report.skipped_queries > 0) {
        std::cerr << "skipped " << report.skipped_queries << " paragraphs without ground truth\n";
    }
    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << "\n";
    return 0;
}

int cmd_sweep_alpha(const RunConfig& config, std::vector<double> grid) {
    if (grid.empty()) {
        for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
    }
    for (double alpha : grid) {
        if (alpha <= 0.0 || alpha > 1.0) {
            std::cerr << "error: alpha " << alpha << " outside (0, 1]\n";
            return 1;
        }
    }
    const Corpus corpus = load(config);
    std::filesystem::create_directories(config.out_dir);
    const auto path = std::filesystem::path(config.out_dir) / "alpha_sweep.csv";
    std::ofstream out(path);
    out << "alpha,f1@20\n";
    std::cout << "alpha,f1@20\n";
    for (double alpha : grid) {
        CrossValidateOptions options = cv_options(config);
        options.alpha = alpha;
        options.variants = {Variant::TfwBm25};
        if (std::find(options.ks.begin(), options.ks.end(), std::size_t{20}) == options.ks.end()) {
            options.ks.push_back(20);
        }
        const EvalReport report = cross_validate(corpus, bm25_params(config), options);
        double f1_sum = 0.0;
        std::size_t n_fields = 0;
        for (const auto& row : report.rows) {
            if (row.fold == -1 && row.k == 20) {
                f1_sum += row.f1;
                ++n_fields;
            }
        }
        const double f1 = n_fields > 0 ? f1_sum / static_cast<double>(n_fields) : 0.0;
        char line[64];
        std::snprintf(line, sizeof(line), "%.1f,%.6f", alpha, f1);
        out << line << "\n";
        std::cout << line << "\n";
    }
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_kappa(const std::string& path_a, const std::string& path_b) {
    std::ifstream a(path_a);
    if (!a) {
        std::cerr << "error: cannot open " << path_a << "\n";
        return 1;
    }
    std::ifstream b(path_b);
    if (!b) {
        std::cerr << "error: cannot open " << path_b << "\n";
        return 1;
    }
    const AnnotationJoin join = join_annotations(a, b);
    for (const auto& id : join.unmatched_a) {
        std::cerr << "skipped (only in " << path_a << "): " << id << "\n";
    }
    for (const auto& id : join.unmatched_b) {
        std::cerr << "skipped (only in " << path_b << "): " << id << "\n";
    }
    const double kappa = cohen_kappa(join.labels_a, join.labels_b);
    std::printf("kappa: %.3f\n", kappa);
    const ConfusionMatrix matrix = confusion_matrix(join.labels_a, join.labels_b);
    std::printf("%-18s", "");
    for (TermFunction tf : kAllTermFunctions) {
        std::printf("%-18s", std::string(to_string(tf)).c_str());
    }
    std::printf("\n");
    for (std::size_t i = 0; i < kNumTermFunctions; ++i) {
        std::printf("%-18s", std::string(to_string(static_cast<TermFunction>(i))).c_str());
        for (std::size_t j = 0; j < kNumTermFunctions; ++j) {
            std::printf("%-18llu", static_cast<unsigned long long>(matrix[i][j]));
        }
        std::printf("\n");
    }
    return 0;
}

int cmd_stats(const RunConfig& config, bool by_field) {
    const Corpus corpus = load(config);
    const auto rows = tf_distribution(corpus, by_field);
    std::printf("%-14s %-18s %10s %10s\n", "field", "term_function", "count", "percent");
    for (const auto& row : rows) {
        std::printf("%-14s %-18s %10llu %9.2f%%\n", row.field.c_str(),
                    std::string(to_string(row.term_function)).c_str(),
                    static_cast<unsigned long long>(row.paragraph_count), row.percentage);
    }
    return 0;
}

int cmd_gen(const RunConfig& config, const SyntheticConfig& synth) {
    const Corpus corpus = gen_synthetic(synth, config.seed);
    save_corpus(corpus, config.originals_path, config.candidates_path);
    std::cout << "wrote " << corpus.originals.size() << " originals to " << config.originals_path
              << " and " << corpus.candidates.size() << " candidates to " << config.candidates_path
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Term-function weighted BM25 citation recommender"};
    app.require_subcommand(1);

    RunConfig config;

    auto* ingest = app.add_subcommand("ingest", "Load and validate a corpus");
    add_corpus_flags(ingest, config);

    auto* rec = app.add_subcommand("recommend", "Rank candidates for a query");
    add_corpus_flags(rec, config);
    add_ranking_flags(rec, config);
    std::string query_text;
    std::string tf_label;
    int year_cutoff = 0;
    rec->add_option("--query", query_text, "Query text (topic phrase or paragraph)")->required();
    rec->add_option("--tf", tf_label, "Query term function (" + ranking_tf_labels() + ")")
        ->required();
    rec->add_option("--year-cutoff", year_cutoff, "Exclude candidates published in or after this year");
    rec->add_option("--variant", config.variant, "plain-bm25 or tfw-bm25 (default tfw-bm25)");

    auto* eval_cmd = app.add_subcommand("evaluate", "5-fold cross-validation of both variants");
    add_corpus_flags(eval_cmd, config);
    add_ranking_flags(eval_cmd, config);
    eval_cmd->add_option("--ks", config.ks, "Cutoffs to report (default 5 10 20 30)")->delimiter(',');
    eval_cmd->add_option("--seed", config.seed, "Fold partition seed (default 42)");
    eval_cmd->add_option("--out", config.out_dir, "Output directory for report files");

    auto* sweep = app.add_subcommand("sweep-alpha", "Evaluate f1@20 over a grid of alpha values");
    add_corpus_flags(sweep, config);
    add_ranking_flags(sweep, config);
    std::vector<double> grid;
    sweep->add_option("--grid", grid, "Alpha values (default 0.1..1.0 step 0.1)")->delimiter(',');
    sweep->add_option("--seed", config.seed, "Fold partition seed (default 42)");
    sweep->add_option("--ks", config.ks, "Cutoffs computed internally")->delimiter(',');
    sweep->add_option("--out", config.out_dir, "Output directory for alpha_sweep.csv");

    auto* kappa = app.add_subcommand("kappa", "Inter-annotator agreement between two TSV files");
    std::string path_a;
    std::string path_b;
    kappa->add_option("file_a", path_a, "First annotation TSV")->required();
    kappa->add_option("file_b", path_b, "Second annotation TSV")->required();

    auto* stats = app.add_subcommand("stats", "Term-function distribution of a corpus");
    add_corpus_flags(stats, config);
    bool by_field = true;
    stats->add_flag("--by-field,!--no-by-field", by_field, "Group by field (default on)");

    auto* gen = app.add_subcommand("gen-synthetic", "Generate a seeded synthetic corpus");
    SyntheticConfig synth;
    gen->add_option("--originals", config.originals_path, "Output originals JSONL")->required();
    gen->add_option("--candidates", config.candidates_path, "Output candidates JSONL")->required();
    gen->add_option("--seed", config.seed, "Generator seed (default 42)");
    gen->add_option("--topics", synth.n_topics, "Number of topics");
    gen->add_option("--cands-per-topic-per-tf", synth.candidates_per_topic_per_tf,
                    "Candidates per topic per term function");
    gen->add_option("--n-originals", synth.n_originals, "Number of original documents");
    gen->add_option("--paragraphs-per-doc", synth.paragraphs_per_doc, "Paragraphs per original");
    gen->add_option("--noise", synth.noise, "Citation noise rate in [0,1]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(config);
        if (rec->parsed()) return cmd_recommend(config, query_text, tf_label, year_cutoff);
        if (eval_cmd->parsed()) return cmd_evaluate(config);
        if (sweep->parsed()) return cmd_sweep_alpha(config, grid);
        if (kappa->parsed()) return cmd_kappa(path_a, path_b);
        if (stats->parsed()) return cmd_stats(config, by_field);
        if (gen->parsed()) return cmd_gen(config, synth);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
