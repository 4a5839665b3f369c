#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tfcr/corpus.hpp"

namespace tfcr {

/// Synthetic corpus generator for desk-scale experiments. Candidates are
/// grouped into topics; within a topic each candidate carries one dominant
/// ranking term function, expressed through a function-specific vocabulary in
/// its abstract. Paragraphs query a topic and cite candidates whose dominant
/// function matches the paragraph label with probability (1 - noise).
struct SyntheticConfig {
    std::size_t n_topics = 15;
    std::size_t candidates_per_topic_per_tf = 6;  // x4 term functions
    std::size_t n_originals = 60;
    std::size_t paragraphs_per_doc = 4;
    std::size_t cites_per_paragraph = 3;
    double noise = 0.2;
    /// Shares over the nine labels in kAllTermFunctions order; zero-sum is
    /// rejected. Default: uniform over the four ranking functions.
    std::array<double, kNumTermFunctions> label_shares = {0, 0, 0, 0.25, 0.25, 0.25, 0.25, 0, 0};
    std::size_t words_per_topic = 6;
    std::size_t words_per_function = 5;
    std::size_t filler_vocab = 40;
    std::size_t max_filler_words = 10;  // per candidate abstract, randomized
    std::vector<std::string> fields = {"synthetic"};
    int candidate_year_base = 1990;
    int original_year_base = 2015;
};

/// Deterministic per (config, seed). Throws std::invalid_argument on an
/// inconsistent config (no candidates, no labels, noise outside [0,1]).
Corpus gen_synthetic(const SyntheticConfig& config, std::uint64_t seed);

}  // namespace tfcr
