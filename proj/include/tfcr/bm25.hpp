#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcr/corpus.hpp"
#include "tfcr/textpipe.hpp"

namespace tfcr {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    /// Clamp negative idf values to 0. Off by default; the scoring formula is
    /// otherwise applied verbatim.
    bool clamp_idf = false;
};

struct Posting {
    std::string cand_id;
    std::uint32_t term_frequency = 0;
};

struct ScoredEntry {
    std::string cand_id;
    double score = 0.0;
    double tf_weight = 0.0;
};

/// Descending by score, ties broken by cand_id ascending.
using RankedList = std::vector<ScoredEntry>;

/// Inverted index over the candidate collection. Immutable after build.
class Index {
public:
    /// Throws std::invalid_argument on an empty candidate collection.
    static Index build(const std::vector<CandidateDocument>& candidates,
                       const Tokenizer& tokenizer);

    /// Builds from pre-tokenized documents (used by tests and the oracle).
    static Index build_from_tokens(const std::vector<std::pair<std::string, TokenStream>>& docs);

    /// log((N - n + 0.5) / (n + 0.5)), natural log; unseen terms have n = 0.
    /// Negative values are preserved unless params.clamp_idf is set.
    double idf(const std::string& term) const;

    /// Score of one candidate for the query. Query term multiplicity counts:
    /// a term appearing m times contributes m summands.
    /// Throws std::out_of_range for an unknown cand_id.
    double score(const TokenStream& query, const std::string& cand_id,
                 const Bm25Params& params) const;

    /// Every candidate exactly once, best first.
    RankedList rank_all(const TokenStream& query, const Bm25Params& params) const;

    std::size_t n_docs() const { return doc_length_.size(); }
    double avgdl() const { return avgdl_; }
    std::uint32_t doc_length(const std::string& cand_id) const;
    std::uint32_t doc_freq(const std::string& term) const;
    std::uint32_t term_frequency(const std::string& term, const std::string& cand_id) const;
    const std::map<std::string, std::vector<Posting>>& postings() const { return postings_; }
    const std::map<std::string, std::uint32_t>& doc_lengths() const { return doc_length_; }
    bool contains(const std::string& cand_id) const { return doc_length_.contains(cand_id); }

private:
    std::map<std::string, std::vector<Posting>> postings_;
    std::map<std::string, std::uint32_t> doc_length_;
    double avgdl_ = 0.0;
};

/// Idf with explicit counts, shared by Index::idf and the tests.
double bm25_idf(std::size_t n_docs, std::size_t doc_freq, bool clamp = false);

}  // namespace tfcr
