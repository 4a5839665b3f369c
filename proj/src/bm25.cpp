#include "tfcr/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace tfcr {

double bm25_idf(std::size_t n_docs, std::size_t doc_freq, bool clamp) {
    const double n = static_cast<double>(n_docs);
    const double df = static_cast<double>(doc_freq);
    double idf = std::log((n - df + 0.5) / (df + 0.5));
    if (clamp && idf < 0.0) idf = 0.0;
    return idf;
}

Index Index::build(const std::vector<CandidateDocument>& candidates, const Tokenizer& tokenizer) {
    std::vector<std::pair<std::string, TokenStream>> docs;
    docs.reserve(candidates.size());
    for (const auto& c : candidates) {
        docs.emplace_back(c.cand_id, tokenizer.tokenize(c.indexed_text()));
    }
    return build_from_tokens(docs);
}

Index Index::build_from_tokens(const std::vector<std::pair<std::string, TokenStream>>& docs) {
    if (docs.empty()) throw std::invalid_argument("candidate collection is empty");
    Index index;
    std::uint64_t total_length = 0;
    for (const auto& [cand_id, tokens] : docs) {
        index.doc_length_[cand_id] = static_cast<std::uint32_t>(tokens.size());
        total_length += tokens.size();
        std::unordered_map<std::string, std::uint32_t> counts;
        for (const auto& term : tokens) ++counts[term];
        for (const auto& [term, count] : counts) {
            index.postings_[term].push_back({cand_id, count});
        }
    }
    for (auto& [term, postings] : index.postings_) {
        std::sort(postings.begin(), postings.end(),
                  [](const Posting& a, const Posting& b) { return a.cand_id < b.cand_id; });
    }
    index.avgdl_ =
        static_cast<double>(total_length) / static_cast<double>(index.doc_length_.size());
    return index;
}

double Index::idf(const std::string& term) const {
    return bm25_idf(n_docs(), doc_freq(term));
}

std::uint32_t Index::doc_length(const std::string& cand_id) const {
    auto it = doc_length_.find(cand_id);
    if (it == doc_length_.end()) throw std::out_of_range("unknown cand_id: " + cand_id);
    return it->second;
}

std::uint32_t Index::doc_freq(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : static_cast<std::uint32_t>(it->second.size());
}

std::uint32_t Index::term_frequency(const std::string& term, const std::string& cand_id) const {
    auto it = postings_.find(term);
    if (it == postings_.end()) return 0;
    auto pit = std::lower_bound(it->second.begin(), it->second.end(), cand_id,
                                [](const Posting& p, const std::string& id) { return p.cand_id < id; });
    if (pit == it->second.end() || pit->cand_id != cand_id) return 0;
    return pit->term_frequency;
}

double Index::score(const TokenStream& query, const std::string& cand_id,
                    const Bm25Params& params) const {
    const double dl = static_cast<double>(doc_length(cand_id));
    if (dl == 0.0) return 0.0;
    const double norm = params.k1 * (1.0 - params.b + params.b * dl / avgdl_);
    double total = 0.0;
    for (const auto& term : query) {
        const double tf = static_cast<double>(term_frequency(term, cand_id));
        if (tf == 0.0) continue;
        const double idf_value = bm25_idf(n_docs(), doc_freq(term), params.clamp_idf);
        total += idf_value * tf * (params.k1 + 1.0) / (tf + norm);
    }
    return total;
}

RankedList Index::rank_all(const TokenStream& query, const Bm25Params& params) const {
    RankedList ranked;
    ranked.reserve(doc_length_.size());
    for (const auto& [cand_id, length] : doc_length_) {
        (void)length;
        ranked.push_back({cand_id, score(query, cand_id, params), 0.0});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const ScoredEntry& a, const ScoredEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.cand_id < b.cand_id;
    });
    return ranked;
}

}  // namespace tfcr
