#include "tfcr/tfrank.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace tfcr {

using nlohmann::json;

std::optional<Variant> parse_variant(std::string_view name) {
    if (name == "plain-bm25") return Variant::PlainBm25;
    if (name == "tfw-bm25") return Variant::TfwBm25;
    return std::nullopt;
}

std::string_view to_string(Variant v) {
    return v == Variant::PlainBm25 ? "plain-bm25" : "tfw-bm25";
}

ProfileMap build_profiles(const Corpus& corpus, const std::set<std::string>& training_doc_ids) {
    std::unordered_set<std::string> known;
    for (const auto& d : corpus.originals) known.insert(d.doc_id);
    for (const auto& id : training_doc_ids) {
        if (!known.contains(id)) throw std::invalid_argument("unknown training doc id: " + id);
    }
    std::set<std::string> paragraph_ids;
    for (const auto& d : corpus.originals) {
        if (!training_doc_ids.contains(d.doc_id)) continue;
        for (const auto& p : d.paragraphs) paragraph_ids.insert(p.paragraph_id);
    }
    return build_profiles_from_paragraphs(corpus, paragraph_ids);
}

ProfileMap build_profiles_from_paragraphs(const Corpus& corpus,
                                          const std::set<std::string>& training_paragraph_ids) {
    ProfileMap profiles;
    for (const auto& c : corpus.candidates) profiles[c.cand_id];  // all-zero default
    for (const auto& d : corpus.originals) {
        for (const auto& p : d.paragraphs) {
            if (!training_paragraph_ids.contains(p.paragraph_id)) continue;
            auto idx = ranking_index(p.term_function);
            if (!idx) continue;
            for (const auto& ref : p.cited_refs) {
                auto it = profiles.find(ref);
                if (it != profiles.end()) ++it->second.counts[*idx];
            }
        }
    }
    return profiles;
}

double tf_weight(const TermFunctionProfile& profile, TermFunction query_tf) {
    auto idx = ranking_index(query_tf);
    if (!idx) throw std::invalid_argument("query term function must be one of: " + ranking_tf_labels());
    const auto total = profile.total();
    if (total == 0) return 0.0;
    return static_cast<double>(profile.counts[*idx]) / static_cast<double>(total);
}

double tfw_score(double bm25, double weight, double alpha) {
    return (1.0 + alpha * weight) * bm25;
}

RankedList recommend(const Query& query, const Index& index, const ProfileMap& profiles,
                     const Corpus& corpus, const Tokenizer& tokenizer, const Bm25Params& params,
                     const RecommendOptions& options) {
    if (options.top_n < 1) throw std::invalid_argument("top_n must be >= 1");
    if (query.alpha <= 0.0 || query.alpha > 1.0) {
        throw std::invalid_argument("alpha must be in (0, 1]");
    }
    if (!is_ranking_tf(query.term_function)) {
        throw std::invalid_argument("query term function must be one of: " + ranking_tf_labels());
    }
    for (const auto& [cand_id, profile] : profiles) {
        (void)profile;
        if (!index.contains(cand_id)) {
            throw std::invalid_argument("profile for unknown candidate '" + cand_id +
                                        "': index and profiles built over different collections");
        }
    }

    const TokenStream tokens = tokenizer.tokenize(query.text);
    RankedList ranked = index.rank_all(tokens, params);
    if (options.variant == Variant::TfwBm25) {
        static const TermFunctionProfile kZeroProfile{};
        for (auto& entry : ranked) {
            auto it = profiles.find(entry.cand_id);
            const auto& profile = it == profiles.end() ? kZeroProfile : it->second;
            entry.tf_weight = tf_weight(profile, query.term_function);
            entry.score = tfw_score(entry.score, entry.tf_weight, query.alpha);
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const ScoredEntry& a, const ScoredEntry& b) {
                             if (a.score != b.score) return a.score > b.score;
                             return a.cand_id < b.cand_id;
                         });
    }

    if (query.year_cutoff) {
        std::unordered_map<std::string, std::optional<int>> years;
        for (const auto& c : corpus.candidates) years[c.cand_id] = c.year;
        const int cutoff = *query.year_cutoff;
        std::erase_if(ranked, [&](const ScoredEntry& e) {
            auto it = years.find(e.cand_id);
            const std::optional<int> year = it == years.end() ? std::nullopt : it->second;
            if (!year) return !options.lenient_year;
            return *year >= cutoff;
        });
    }
    if (ranked.size() > options.top_n) ranked.resize(options.top_n);
    return ranked;
}

void save_profiles(const ProfileMap& profiles, std::ostream& out) {
    for (const auto& [cand_id, profile] : profiles) {
        json obj;
        obj["cand_id"] = cand_id;
        obj["counts"] = profile.counts;
        out << obj.dump() << "\n";
    }
}

ProfileMap load_profiles(std::istream& in) {
    ProfileMap profiles;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error("profiles:" + std::to_string(lineno) +
                                     ": malformed record: " + e.what());
        }
        TermFunctionProfile profile;
        const auto& counts = obj.at("counts");
        if (!counts.is_array() || counts.size() != 4) {
            throw std::runtime_error("profiles:" + std::to_string(lineno) +
                                     ": counts must be a 4-array");
        }
        for (std::size_t i = 0; i < 4; ++i) profile.counts[i] = counts[i].get<std::uint32_t>();
        profiles[obj.at("cand_id").get<std::string>()] = profile;
    }
    return profiles;
}

}  // namespace tfcr
