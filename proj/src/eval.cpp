#include "tfcr/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "tfcr/rng.hpp"
#include "tfcr/textpipe.hpp"

namespace tfcr {

using nlohmann::json;

Metrics precision_recall_f1(const std::vector<std::string>& recommended,
                            const std::set<std::string>& relevant, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (relevant.empty()) throw std::invalid_argument("relevant set is empty");
    const std::size_t cutoff = std::min(k, recommended.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cutoff; ++i) {
        if (relevant.contains(recommended[i])) ++hits;
    }
    Metrics m;
    m.precision = cutoff == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(cutoff);
    m.recall = static_cast<double>(hits) / static_cast<double>(relevant.size());
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

FoldAssignment make_folds(const std::vector<std::string>& unit_ids, std::size_t n_folds,
                          std::uint64_t seed) {
    if (n_folds < 1) throw std::invalid_argument("n_folds must be >= 1");
    if (unit_ids.size() < n_folds) {
        throw std::invalid_argument("need at least " + std::to_string(n_folds) + " units, got " +
                                    std::to_string(unit_ids.size()));
    }
    std::vector<std::string> ids = unit_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    Rng rng(seed);
    rng.shuffle(ids);
    FoldAssignment assignment;
    assignment.n_folds = n_folds;
    assignment.seed = seed;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        assignment.fold_of[ids[i]] = i % n_folds;
    }
    return assignment;
}

namespace {

struct QueryUnit {
    const OriginalDocument* doc = nullptr;
    const Paragraph* paragraph = nullptr;
    std::set<std::string> relevant;
};

struct MetricAccumulator {
    // macro
    double precision_sum = 0.0;
    double recall_sum = 0.0;
    double f1_sum = 0.0;
    std::size_t n_queries = 0;
    // micro
    std::uint64_t hits = 0;
    std::uint64_t returned = 0;
    std::uint64_t relevant = 0;

    Metrics finish(bool micro) const {
        Metrics m;
        if (micro) {
            m.precision = returned > 0 ? static_cast<double>(hits) / static_cast<double>(returned) : 0.0;
            m.recall = relevant > 0 ? static_cast<double>(hits) / static_cast<double>(relevant) : 0.0;
        } else if (n_queries > 0) {
            m.precision = precision_sum / static_cast<double>(n_queries);
            m.recall = recall_sum / static_cast<double>(n_queries);
        }
        if (micro) {
            m.f1 = (m.precision + m.recall) > 0.0
                       ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                       : 0.0;
        } else {
            m.f1 = n_queries > 0 ? f1_sum / static_cast<double>(n_queries) : 0.0;
        }
        return m;
    }
};

}  // namespace

EvalReport cross_validate(const Corpus& corpus, const Bm25Params& params,
                          const CrossValidateOptions& options) {
    EvalReport report;

    // Query units: ranking-labeled paragraphs with usable ground truth.
    std::map<std::string, std::vector<QueryUnit>> units_by_field;
    for (const auto& d : corpus.originals) {
        std::set<std::string> article_refs;
        if (options.whole_article_ground_truth) {
            for (const auto& p : d.paragraphs) {
                article_refs.insert(p.cited_refs.begin(), p.cited_refs.end());
            }
        }
        for (const auto& p : d.paragraphs) {
            if (!is_ranking_tf(p.term_function)) continue;
            std::set<std::string> relevant =
                options.whole_article_ground_truth ? article_refs : p.cited_refs;
            if (relevant.empty()) {
                ++report.skipped_queries;
                continue;
            }
            units_by_field[d.field].push_back({&d, &p, std::move(relevant)});
        }
    }

    // Identical partition for every variant: one seeded fold assignment per
    // field over its paragraph ids.
    std::map<std::string, FoldAssignment> folds_by_field;
    for (const auto& [field, units] : units_by_field) {
        std::vector<std::string> ids;
        ids.reserve(units.size());
        for (const auto& u : units) ids.push_back(u.paragraph->paragraph_id);
        const std::uint64_t field_seed =
            options.seed ^ fnv1a64(std::span<const char>(field.data(), field.size()));
        folds_by_field[field] = make_folds(ids, options.n_folds, field_seed);
    }

    const Tokenizer tokenizer;
    const Index index = Index::build(corpus.candidates, tokenizer);

    // Per-fold training profiles: every paragraph in the corpus except the
    // fold's test paragraphs.
    std::set<std::string> all_paragraph_ids;
    for (const auto& d : corpus.originals) {
        for (const auto& p : d.paragraphs) all_paragraph_ids.insert(p.paragraph_id);
    }
    std::vector<ProfileMap> fold_profiles(options.n_folds);
    for (std::size_t f = 0; f < options.n_folds; ++f) {
        std::set<std::string> training = all_paragraph_ids;
        for (const auto& [field, assignment] : folds_by_field) {
            for (const auto& [pid, fold] : assignment.fold_of) {
                if (fold == f) training.erase(pid);
            }
        }
        fold_profiles[f] = build_profiles_from_paragraphs(corpus, training);
    }

    for (Variant variant : options.variants) {
        for (const auto& [field, units] : units_by_field) {
            const auto& assignment = folds_by_field.at(field);
            // accumulators[fold][k]
            std::vector<std::map<std::size_t, MetricAccumulator>> acc(options.n_folds);
            for (const auto& unit : units) {
                const std::size_t fold = assignment.fold_of.at(unit.paragraph->paragraph_id);
                Query query;
                query.text = unit.paragraph->text;
                query.term_function = unit.paragraph->term_function;
                query.year_cutoff = unit.doc->year;
                query.alpha = options.alpha;
                RecommendOptions rec_options;
                rec_options.variant = variant;
                rec_options.top_n = options.top_n;
                rec_options.lenient_year = options.lenient_year;
                const RankedList ranked = recommend(query, index, fold_profiles[fold], corpus,
                                                    tokenizer, params, rec_options);
                std::vector<std::string> ids;
                ids.reserve(ranked.size());
                for (const auto& e : ranked) ids.push_back(e.cand_id);
                for (std::size_t k : options.ks) {
                    auto& a = acc[fold][k];
                    const std::size_t cutoff = std::min(k, ids.size());
                    std::size_t hits = 0;
                    for (std::size_t i = 0; i < cutoff; ++i) {
                        if (unit.relevant.contains(ids[i])) ++hits;
                    }
                    a.hits += hits;
                    a.returned += cutoff;
                    a.relevant += unit.relevant.size();
                    const Metrics m = precision_recall_f1(ids, unit.relevant, k);
                    a.precision_sum += m.precision;
                    a.recall_sum += m.recall;
                    a.f1_sum += m.f1;
                    ++a.n_queries;
                }
            }
            for (std::size_t k : options.ks) {
                Metrics avg;
                for (std::size_t f = 0; f < options.n_folds; ++f) {
                    const Metrics m = acc[f][k].finish(options.micro_average);
                    report.rows.push_back({std::string(to_string(variant)), field,
                                           static_cast<int>(f), k, m.precision, m.recall, m.f1});
                    avg.precision += m.precision;
                    avg.recall += m.recall;
                    avg.f1 += m.f1;
                }
                const double n = static_cast<double>(options.n_folds);
                report.rows.push_back({std::string(to_string(variant)), field, -1, k,
                                       avg.precision / n, avg.recall / n, avg.f1 / n});
            }
        }
    }

    report.header["n_folds"] = std::to_string(options.n_folds);
    report.header["seed"] = std::to_string(options.seed);
    report.header["k1"] = std::to_string(params.k1);
    report.header["b"] = std::to_string(params.b);
    report.header["alpha"] = std::to_string(options.alpha);
    report.header["top_n"] = std::to_string(options.top_n);
    report.header["averaging"] = options.micro_average ? "micro" : "macro";
    return report;
}

namespace {

std::string fmt6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string fold_label(int fold) {
    return fold < 0 ? "avg" : std::to_string(fold);
}

}  // namespace

void write_report_csv(const EvalReport& report, std::ostream& out) {
    for (const auto& [key, value] : report.header) {
        out << "# " << key << "=" << value << "\n";
    }
    out << "variant,field,fold,k,precision,recall,f1\n";
    for (const auto& row : report.rows) {
        out << row.variant << "," << row.field << "," << fold_label(row.fold) << "," << row.k
            << "," << fmt6(row.precision) << "," << fmt6(row.recall) << "," << fmt6(row.f1)
            << "\n";
    }
}

void write_report_json(const EvalReport& report, std::ostream& out) {
    json obj;
    obj["header"] = report.header;
    obj["skipped_queries"] = report.skipped_queries;
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"variant", row.variant},
                        {"field", row.field},
                        {"fold", fold_label(row.fold)},
                        {"k", row.k},
                        {"precision", row.precision},
                        {"recall", row.recall},
                        {"f1", row.f1}});
    }
    obj["rows"] = std::move(rows);
    out << obj.dump(2) << "\n";
}

double cohen_kappa(const std::vector<TermFunction>& labels_a,
                   const std::vector<TermFunction>& labels_b) {
    if (labels_a.empty()) throw std::invalid_argument("empty label sequences");
    if (labels_a.size() != labels_b.size()) {
        throw std::invalid_argument("label sequences differ in length");
    }
    const double n = static_cast<double>(labels_a.size());
    std::array<double, kNumTermFunctions> marg_a{};
    std::array<double, kNumTermFunctions> marg_b{};
    double agreements = 0.0;
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        marg_a[static_cast<std::size_t>(labels_a[i])] += 1.0;
        marg_b[static_cast<std::size_t>(labels_b[i])] += 1.0;
        if (labels_a[i] == labels_b[i]) agreements += 1.0;
    }
    const double p_o = agreements / n;
    double p_e = 0.0;
    for (std::size_t c = 0; c < kNumTermFunctions; ++c) {
        p_e += (marg_a[c] / n) * (marg_b[c] / n);
    }
    if (p_e >= 1.0) return 1.0;  // both marginals degenerate on one label
    return (p_o - p_e) / (1.0 - p_e);
}

ConfusionMatrix confusion_matrix(const std::vector<TermFunction>& labels_a,
                                 const std::vector<TermFunction>& labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw std::invalid_argument("label sequences differ in length");
    }
    ConfusionMatrix matrix{};
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        ++matrix[static_cast<std::size_t>(labels_a[i])][static_cast<std::size_t>(labels_b[i])];
    }
    return matrix;
}

namespace {

std::map<std::string, TermFunction> read_annotation_tsv(std::istream& in, const char* name) {
    std::map<std::string, TermFunction> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line == "paragraph_id\tterm_function") continue;  // optional header
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error(std::string(name) + ":" + std::to_string(lineno) +
                                     ": expected two tab-separated columns");
        }
        const std::string id = line.substr(0, tab);
        const std::string label = line.substr(tab + 1);
        auto tf = parse_term_function(label);
        if (!tf) {
            throw std::runtime_error(std::string(name) + ":" + std::to_string(lineno) +
                                     ": unknown term-function label '" + label + "'");
        }
        out[id] = *tf;
    }
    return out;
}

}  // namespace

AnnotationJoin join_annotations(std::istream& file_a, std::istream& file_b) {
    const auto a = read_annotation_tsv(file_a, "annotations_a");
    const auto b = read_annotation_tsv(file_b, "annotations_b");
    AnnotationJoin join;
    for (const auto& [id, tf] : a) {
        auto it = b.find(id);
        if (it == b.end()) {
            join.unmatched_a.push_back(id);
            continue;
        }
        join.labels_a.push_back(tf);
        join.labels_b.push_back(it->second);
    }
    for (const auto& [id, tf] : b) {
        (void)tf;
        if (!a.contains(id)) join.unmatched_b.push_back(id);
    }
    if (join.labels_a.empty()) {
        throw std::runtime_error("annotation files share no paragraph_ids");
    }
    return join;
}

std::vector<DistributionRow> tf_distribution(const Corpus& corpus, bool group_by_field) {
    std::map<std::string, std::array<std::uint64_t, kNumTermFunctions>> counts;
    for (const auto& d : corpus.originals) {
        const std::string field = group_by_field ? d.field : "all";
        auto& bucket = counts[field];
        for (const auto& p : d.paragraphs) {
            ++bucket[static_cast<std::size_t>(p.term_function)];
        }
    }
    std::vector<DistributionRow> rows;
    for (const auto& [field, bucket] : counts) {
        std::uint64_t total = 0;
        for (auto c : bucket) total += c;
        for (std::size_t i = 0; i < kNumTermFunctions; ++i) {
            DistributionRow row;
            row.field = field;
            row.term_function = static_cast<TermFunction>(i);
            row.paragraph_count = bucket[i];
            row.percentage =
                total > 0 ? 100.0 * static_cast<double>(bucket[i]) / static_cast<double>(total)
                          : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace tfcr
