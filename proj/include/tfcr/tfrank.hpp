#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "tfcr/bm25.hpp"
#include "tfcr/corpus.hpp"

namespace tfcr {

/// Per-candidate citation counts over the four ranking term functions, in
/// canonical order (problem, method, problem+method, method+problem).
struct TermFunctionProfile {
    std::array<std::uint32_t, 4> counts = {0, 0, 0, 0};

    std::uint64_t total() const {
        return static_cast<std::uint64_t>(counts[0]) + counts[1] + counts[2] + counts[3];
    }
    bool operator==(const TermFunctionProfile&) const = default;
};

using ProfileMap = std::map<std::string, TermFunctionProfile>;

enum class Variant { PlainBm25, TfwBm25 };

std::optional<Variant> parse_variant(std::string_view name);
std::string_view to_string(Variant v);

struct Query {
    std::string text;
    TermFunction term_function = TermFunction::Problem;
    std::optional<int> year_cutoff;
    double alpha = 1.0;
};

struct RecommendOptions {
    Variant variant = Variant::TfwBm25;
    std::size_t top_n = 30;
    /// When a year cutoff is given, candidates without a year are excluded
    /// unless this flag admits them.
    bool lenient_year = false;
};

/// Counts, over the given training originals only, how often each candidate
/// is cited from paragraphs of each ranking term function. Paragraphs with
/// non-ranking labels contribute nothing. Throws on an unknown training id.
ProfileMap build_profiles(const Corpus& corpus, const std::set<std::string>& training_doc_ids);

/// Same, but over an explicit paragraph subset (the cross-validation
/// harness partitions by paragraph).
ProfileMap build_profiles_from_paragraphs(const Corpus& corpus,
                                          const std::set<std::string>& training_paragraph_ids);

/// counts[q_f] / sum(counts); 0 for the all-zero profile.
double tf_weight(const TermFunctionProfile& profile, TermFunction query_tf);

/// (1 + alpha * weight) * bm25. With alpha = 1 this is the combined score
/// exactly.
double tfw_score(double bm25, double weight, double alpha);

/// Full pipeline: tokenize, score every candidate (plain or combined),
/// apply the year filter, truncate to top_n.
RankedList recommend(const Query& query, const Index& index, const ProfileMap& profiles,
                     const Corpus& corpus, const Tokenizer& tokenizer, const Bm25Params& params,
                     const RecommendOptions& options);

/// Profile dump/load: one JSON object per line with keys cand_id, counts.
void save_profiles(const ProfileMap& profiles, std::ostream& out);
ProfileMap load_profiles(std::istream& in);

}  // namespace tfcr
