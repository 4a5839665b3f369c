#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tfcr/bm25.hpp"
#include "tfcr/corpus.hpp"
#include "tfcr/tfrank.hpp"

namespace tfcr {

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Top-k precision/recall/F1. hits = |top-k of recommended ∩ relevant|.
/// The precision divisor is k, or the actual list length when fewer than k
/// items were returned. Throws on k < 1 or empty relevant set.
Metrics precision_recall_f1(const std::vector<std::string>& recommended,
                            const std::set<std::string>& relevant, std::size_t k);

struct FoldAssignment {
    std::map<std::string, std::size_t> fold_of;
    std::size_t n_folds = 0;
    std::uint64_t seed = 0;
};

/// Deterministic seeded partition into n_folds folds whose sizes differ by at
/// most one. Throws if there are fewer units than folds.
FoldAssignment make_folds(const std::vector<std::string>& unit_ids, std::size_t n_folds,
                          std::uint64_t seed);

struct MetricRow {
    std::string variant;
    std::string field;
    int fold = 0;  // -1 marks the fold-averaged row
    std::size_t k = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EvalReport {
    std::vector<MetricRow> rows;
    std::size_t skipped_queries = 0;  // paragraphs without usable ground truth
    /// Settings echoed into report headers.
    std::map<std::string, std::string> header;
};

struct CrossValidateOptions {
    std::vector<Variant> variants = {Variant::PlainBm25, Variant::TfwBm25};
    std::vector<std::size_t> ks = {5, 10, 20, 30};
    std::size_t n_folds = 5;
    std::size_t top_n = 30;
    double alpha = 1.0;
    std::uint64_t seed = 0;
    bool lenient_year = false;
    /// Ground truth per query: the paragraph's own citations (default) or the
    /// union of citations across the whole citing article.
    bool whole_article_ground_truth = false;
    /// Micro-averaging pools hits over queries instead of averaging per-query
    /// metrics.
    bool micro_average = false;
};

/// 5-fold (by default) cross-validation. Folds are drawn over ranking-labeled
/// paragraphs within each field; every variant is evaluated on the identical
/// partition. Profiles for a fold are built from training paragraphs only.
EvalReport cross_validate(const Corpus& corpus, const Bm25Params& params,
                          const CrossValidateOptions& options);

void write_report_csv(const EvalReport& report, std::ostream& out);
void write_report_json(const EvalReport& report, std::ostream& out);

/// Cohen's kappa over two aligned label sequences. Throws on length mismatch
/// or empty input. Returns 1 when expected agreement is 1 and observed
/// agreement is total.
double cohen_kappa(const std::vector<TermFunction>& labels_a,
                   const std::vector<TermFunction>& labels_b);

/// 9x9 confusion matrix, rows = annotator a, columns = annotator b, indexed
/// in kAllTermFunctions order.
using ConfusionMatrix = std::array<std::array<std::uint64_t, kNumTermFunctions>, kNumTermFunctions>;
ConfusionMatrix confusion_matrix(const std::vector<TermFunction>& labels_a,
                                 const std::vector<TermFunction>& labels_b);

struct AnnotationJoin {
    std::vector<TermFunction> labels_a;
    std::vector<TermFunction> labels_b;
    std::vector<std::string> unmatched_a;
    std::vector<std::string> unmatched_b;
};

/// Joins two `paragraph_id<TAB>term_function` files on paragraph_id.
/// Unmatched ids are reported and skipped. Throws if no ids overlap.
AnnotationJoin join_annotations(std::istream& file_a, std::istream& file_b);

struct DistributionRow {
    std::string field;
    TermFunction term_function = TermFunction::Application;
    std::uint64_t paragraph_count = 0;
    double percentage = 0.0;  // within the field, sums to 100
};

/// Paragraph counts and percentages per term function, optionally per field
/// (one synthetic "all" field otherwise). All nine categories appear, zero
/// rows included.
std::vector<DistributionRow> tf_distribution(const Corpus& corpus, bool group_by_field);

}  // namespace tfcr
