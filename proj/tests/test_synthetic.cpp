#include <doctest.h>

#include <sstream>

#include "tfcr/corpus.hpp"
#include "tfcr/eval.hpp"
#include "tfcr/synthetic.hpp"
#include "tfcr/tfrank.hpp"

using namespace tfcr;

TEST_CASE("generated corpus validates cleanly") {
    SyntheticConfig config;
    config.n_topics = 4;
    config.candidates_per_topic_per_tf = 2;
    config.n_originals = 10;
    config.paragraphs_per_doc = 3;
    config.cites_per_paragraph = 2;
    Corpus corpus = gen_synthetic(config, 1);
    CHECK(validate_corpus(corpus).empty());
    CHECK(corpus.candidates.size() == 4 * 4 * 2);
    CHECK(corpus.originals.size() == 10);
}

TEST_CASE("same config and seed give byte-identical corpora") {
    SyntheticConfig config;
    config.n_topics = 3;
    config.candidates_per_topic_per_tf = 2;
    config.n_originals = 6;
    config.paragraphs_per_doc = 2;
    config.cites_per_paragraph = 1;
    auto dump = [&](std::uint64_t seed) {
        Corpus corpus = gen_synthetic(config, seed);
        std::ostringstream orig;
        std::ostringstream cand;
        save_corpus(corpus, orig, cand);
        return orig.str() + cand.str();
    };
    CHECK(dump(5) == dump(5));
    CHECK(dump(5) != dump(6));
}

TEST_CASE("noise 0 concentrates every profile on one function") {
    SyntheticConfig config;
    config.n_topics = 4;
    config.candidates_per_topic_per_tf = 2;
    config.n_originals = 30;
    config.paragraphs_per_doc = 4;
    config.cites_per_paragraph = 2;
    config.noise = 0.0;
    Corpus corpus = gen_synthetic(config, 3);
    std::set<std::string> all_doc_ids;
    for (const auto& d : corpus.originals) all_doc_ids.insert(d.doc_id);
    ProfileMap profiles = build_profiles(corpus, all_doc_ids);
    for (const auto& [id, profile] : profiles) {
        CAPTURE(id);
        int nonzero = 0;
        for (auto c : profile.counts) {
            if (c > 0) ++nonzero;
        }
        CHECK(nonzero <= 1);
    }
}

TEST_CASE("off-diagonal profile mass approximates the noise rate") {
    SyntheticConfig config;
    config.n_topics = 10;
    config.candidates_per_topic_per_tf = 3;
    config.n_originals = 150;
    config.paragraphs_per_doc = 4;
    config.cites_per_paragraph = 2;
    config.noise = 0.2;
    Corpus corpus = gen_synthetic(config, 9);

    // dominant function of each candidate, recovered from generation order
    std::set<std::string> all_doc_ids;
    for (const auto& d : corpus.originals) all_doc_ids.insert(d.doc_id);
    ProfileMap profiles = build_profiles(corpus, all_doc_ids);
    std::uint64_t diagonal = 0;
    std::uint64_t total = 0;
    std::size_t cand_index = 0;
    for (const auto& c : corpus.candidates) {
        const std::size_t tf_index =
            (cand_index / config.candidates_per_topic_per_tf) % 4;
        ++cand_index;
        const auto& profile = profiles.at(c.cand_id);
        for (std::size_t i = 0; i < 4; ++i) {
            total += profile.counts[i];
            if (i == tf_index) diagonal += profile.counts[i];
        }
    }
    REQUIRE(total > 400);
    const double off_diagonal =
        1.0 - static_cast<double>(diagonal) / static_cast<double>(total);
    // binomial tolerance: ~4 sigma around 0.2 with n > 400 draws
    CHECK(off_diagonal > 0.2 - 0.08);
    CHECK(off_diagonal < 0.2 + 0.08);
}

TEST_CASE("candidate years always precede original years") {
    SyntheticConfig config;
    config.n_topics = 3;
    config.candidates_per_topic_per_tf = 2;
    config.n_originals = 8;
    config.paragraphs_per_doc = 2;
    config.cites_per_paragraph = 1;
    Corpus corpus = gen_synthetic(config, 4);
    int max_cand_year = 0;
    int min_orig_year = 1 << 30;
    for (const auto& c : corpus.candidates) max_cand_year = std::max(max_cand_year, *c.year);
    for (const auto& d : corpus.originals) min_orig_year = std::min(min_orig_year, d.year);
    CHECK(max_cand_year < min_orig_year);
}

TEST_CASE("inconsistent configs are rejected") {
    SyntheticConfig config;
    config.n_topics = 0;
    CHECK_THROWS_AS(gen_synthetic(config, 1), std::invalid_argument);
    config = {};
    config.noise = 1.5;
    CHECK_THROWS_AS(gen_synthetic(config, 1), std::invalid_argument);
    config = {};
    config.label_shares = {0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(gen_synthetic(config, 1), std::invalid_argument);
    config = {};
    config.cites_per_paragraph = 100;
    CHECK_THROWS_AS(gen_synthetic(config, 1), std::invalid_argument);
}

TEST_CASE("label shares steer the paragraph distribution") {
    SyntheticConfig config;
    config.n_topics = 5;
    config.candidates_per_topic_per_tf = 2;
    config.n_originals = 400;
    config.paragraphs_per_doc = 4;
    config.cites_per_paragraph = 1;
    // average shares over the four ranking functions, remainder spread over
    // the other five labels
    config.label_shares = {0.0214, 0.0214, 0.0214, 0.060, 0.156, 0.295, 0.382, 0.0214, 0.0214};
    Corpus corpus = gen_synthetic(config, 21);
    const auto rows = tf_distribution(corpus, false);
    for (const auto& row : rows) {
        if (row.term_function == TermFunction::ProblemPlusMethod) {
            CHECK(row.percentage == doctest::Approx(38.2).epsilon(0.12));
        }
        if (row.term_function == TermFunction::Problem) {
            CHECK(row.percentage == doctest::Approx(29.5).epsilon(0.12));
        }
        if (row.term_function == TermFunction::MethodPlusProblem) {
            CHECK(row.percentage == doctest::Approx(15.6).epsilon(0.2));
        }
        if (row.term_function == TermFunction::Method) {
            CHECK(row.percentage == doctest::Approx(6.0).epsilon(0.35));
        }
    }
}
