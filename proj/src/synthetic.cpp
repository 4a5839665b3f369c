#include "tfcr/synthetic.hpp"

#include <cstdio>
#include <stdexcept>

#include "tfcr/rng.hpp"

namespace tfcr {

namespace {

// Suffix alphabet avoids vowels and the letters Porter suffixes need, so
// generated words are stemmer fixed points and never collide.
constexpr char kLetters[] = "bcdfgjkmpqvwxz";

std::string encode(std::size_t value) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        out.push_back(kLetters[value % (sizeof(kLetters) - 1)]);
        value /= sizeof(kLetters) - 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += " ";
        out += w;
    }
    return out;
}

}  // namespace

Corpus gen_synthetic(const SyntheticConfig& config, std::uint64_t seed) {
    if (config.n_topics == 0 || config.candidates_per_topic_per_tf == 0) {
        throw std::invalid_argument("config yields zero candidates");
    }
    if (config.n_originals == 0 || config.paragraphs_per_doc == 0) {
        throw std::invalid_argument("config yields zero paragraphs");
    }
    if (config.cites_per_paragraph == 0 ||
        config.cites_per_paragraph > config.candidates_per_topic_per_tf) {
        throw std::invalid_argument(
            "cites_per_paragraph must be in [1, candidates_per_topic_per_tf]");
    }
    if (config.words_per_topic == 0 || config.words_per_function == 0) {
        throw std::invalid_argument("topic and function vocabularies must be non-empty");
    }
    if (config.noise < 0.0 || config.noise > 1.0) {
        throw std::invalid_argument("noise must be in [0, 1]");
    }
    if (config.fields.empty()) throw std::invalid_argument("at least one field required");
    double share_sum = 0.0;
    for (double s : config.label_shares) {
        if (s < 0.0) throw std::invalid_argument("label shares must be non-negative");
        share_sum += s;
    }
    if (share_sum <= 0.0) throw std::invalid_argument("label shares sum to zero");

    Rng rng(seed);
    Corpus corpus;

    std::vector<std::vector<std::string>> topic_words(config.n_topics);
    for (std::size_t t = 0; t < config.n_topics; ++t) {
        for (std::size_t w = 0; w < config.words_per_topic; ++w) {
            topic_words[t].push_back("top" + encode(t * config.words_per_topic + w));
        }
    }
    std::vector<std::vector<std::string>> func_words(kRankingTermFunctions.size());
    for (std::size_t f = 0; f < func_words.size(); ++f) {
        for (std::size_t w = 0; w < config.words_per_function; ++w) {
            func_words[f].push_back("fun" + encode(f * config.words_per_function + w));
        }
    }
    std::vector<std::string> filler;
    for (std::size_t i = 0; i < config.filler_vocab; ++i) filler.push_back("fil" + encode(i));

    // cand_pool[topic][tf_index] -> candidate ids with that dominant function
    std::vector<std::array<std::vector<std::string>, 4>> cand_pool(config.n_topics);
    std::size_t cand_seq = 0;
    for (std::size_t t = 0; t < config.n_topics; ++t) {
        for (std::size_t f = 0; f < 4; ++f) {
            for (std::size_t j = 0; j < config.candidates_per_topic_per_tf; ++j) {
                CandidateDocument cand;
                char buf[16];
                std::snprintf(buf, sizeof(buf), "c%05zu", cand_seq++);
                cand.cand_id = buf;
                cand.title = join(topic_words[t]);
                std::vector<std::string> abstract_words = func_words[f];
                const std::size_t n_filler = config.max_filler_words == 0
                                                 ? 0
                                                 : rng.next(config.max_filler_words + 1);
                for (std::size_t w = 0; w < n_filler && !filler.empty(); ++w) {
                    abstract_words.push_back(filler[rng.next(filler.size())]);
                }
                cand.abstract = join(abstract_words);
                cand.year = config.candidate_year_base + static_cast<int>(rng.next(10));
                cand_pool[t][f].push_back(cand.cand_id);
                corpus.candidates.push_back(std::move(cand));
            }
        }
    }

    auto sample_label = [&]() -> TermFunction {
        double r = rng.unit() * share_sum;
        for (std::size_t i = 0; i < kNumTermFunctions; ++i) {
            r -= config.label_shares[i];
            if (r < 0.0) return static_cast<TermFunction>(i);
        }
        return TermFunction::TopicIrrelevant;
    };

    std::size_t para_seq = 0;
    for (std::size_t i = 0; i < config.n_originals; ++i) {
        OriginalDocument doc;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "d%04zu", i);
        doc.doc_id = buf;
        doc.field = config.fields[i % config.fields.size()];
        doc.year = config.original_year_base + static_cast<int>(rng.next(5));
        doc.title = filler.empty() ? "survey" : filler[rng.next(filler.size())];
        doc.abstract = filler.empty() ? "survey" : filler[rng.next(filler.size())];
        for (std::size_t j = 0; j < config.paragraphs_per_doc; ++j) {
            Paragraph p;
            char pbuf[24];
            std::snprintf(pbuf, sizeof(pbuf), "p%06zu", para_seq++);
            p.paragraph_id = pbuf;
            p.term_function = sample_label();
            const auto ridx = ranking_index(p.term_function);
            if (ridx) {
                const std::size_t topic = rng.next(config.n_topics);
                p.text = join(topic_words[topic]);
                const auto& matching = cand_pool[topic][*ridx];
                while (p.cited_refs.size() < config.cites_per_paragraph) {
                    std::string pick;
                    if (rng.unit() < config.noise) {
                        // cite a same-topic candidate with a different function
                        std::size_t other = (*ridx + 1 + rng.next(3)) % 4;
                        const auto& pool = cand_pool[topic][other];
                        pick = pool[rng.next(pool.size())];
                    } else {
                        pick = matching[rng.next(matching.size())];
                    }
                    p.cited_refs.insert(pick);
                }
            } else {
                p.text = filler.empty() ? "miscellaneous remarks"
                                        : join({filler[rng.next(filler.size())],
                                                filler[rng.next(filler.size())],
                                                filler[rng.next(filler.size())]});
                if (p.term_function != TermFunction::TopicIrrelevant) {
                    p.cited_refs.insert(corpus.candidates[rng.next(corpus.candidates.size())].cand_id);
                }
            }
            doc.paragraphs.push_back(std::move(p));
        }
        corpus.originals.push_back(std::move(doc));
    }
    return corpus;
}

}  // namespace tfcr
