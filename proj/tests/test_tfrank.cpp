#include <doctest.h>

#include <sstream>

#include "tfcr/rng.hpp"
#include "tfcr/tfrank.hpp"

using namespace tfcr;

namespace {

Paragraph make_paragraph(const std::string& id, TermFunction tf,
                         std::set<std::string> refs, const std::string& text = "some text") {
    Paragraph p;
    p.paragraph_id = id;
    p.text = text;
    p.term_function = tf;
    p.cited_refs = std::move(refs);
    return p;
}

// One original citing "c1" from a controlled mix of paragraph labels.
Corpus profile_corpus() {
    Corpus corpus;
    corpus.candidates.push_back({"c1", "target paper", "about things", 2000});
    corpus.candidates.push_back({"c2", "other paper", "unrelated", 2001});
    OriginalDocument d;
    d.doc_id = "d1";
    d.title = "T";
    d.abstract = "A";
    d.year = 2015;
    d.field = "ie";
    int seq = 0;
    auto add = [&](TermFunction tf, int times) {
        for (int i = 0; i < times; ++i) {
            d.paragraphs.push_back(
                make_paragraph("p" + std::to_string(seq++), tf, {"c1"}));
        }
    };
    add(TermFunction::Problem, 4);
    add(TermFunction::Method, 1);
    add(TermFunction::ProblemPlusMethod, 3);
    corpus.originals.push_back(std::move(d));
    return corpus;
}

}  // namespace

TEST_CASE("build_profiles counts citations per ranking term function") {
    Corpus corpus = profile_corpus();
    ProfileMap profiles = build_profiles(corpus, {"d1"});
    // canonical order: (problem, method, problem+method, method+problem)
    CHECK(profiles.at("c1").counts == std::array<std::uint32_t, 4>{4, 1, 3, 0});
}

TEST_CASE("never-cited candidates get the all-zero profile") {
    Corpus corpus = profile_corpus();
    ProfileMap profiles = build_profiles(corpus, {"d1"});
    CHECK(profiles.at("c2").counts == std::array<std::uint32_t, 4>{0, 0, 0, 0});
}

TEST_CASE("non-ranking paragraph labels contribute to no counter") {
    Corpus corpus;
    corpus.candidates.push_back({"c1", "t", "a", 2000});
    OriginalDocument d;
    d.doc_id = "d1";
    d.title = "T";
    d.abstract = "A";
    d.year = 2015;
    d.field = "ie";
    d.paragraphs.push_back(make_paragraph("p1", TermFunction::Application, {"c1"}));
    corpus.originals.push_back(std::move(d));
    ProfileMap profiles = build_profiles(corpus, {"d1"});
    CHECK(profiles.at("c1").counts == std::array<std::uint32_t, 4>{0, 0, 0, 0});
}

TEST_CASE("unknown training doc id is an error") {
    Corpus corpus = profile_corpus();
    CHECK_THROWS_AS(build_profiles(corpus, {"d1", "nope"}), std::invalid_argument);
}

TEST_CASE("training isolation: non-training originals never contribute") {
    Corpus corpus = profile_corpus();
    ProfileMap before = build_profiles(corpus, {"d1"});
    OriginalDocument extra;
    extra.doc_id = "d2";
    extra.title = "T2";
    extra.abstract = "A2";
    extra.year = 2016;
    extra.field = "ie";
    extra.paragraphs.push_back(make_paragraph("px", TermFunction::Problem, {"c1", "c2"}));
    corpus.originals.push_back(extra);
    CHECK(build_profiles(corpus, {"d1"}) == before);
}

TEST_CASE("tf_weight reproduces the worked F=(4,2,8,1) example") {
    TermFunctionProfile profile{{4, 2, 8, 1}};
    CHECK(tf_weight(profile, TermFunction::Problem) == doctest::Approx(4.0 / 15).epsilon(1e-12));
    CHECK(tf_weight(profile, TermFunction::Method) == doctest::Approx(2.0 / 15).epsilon(1e-12));
    CHECK(tf_weight(profile, TermFunction::ProblemPlusMethod) ==
          doctest::Approx(8.0 / 15).epsilon(1e-12));
    CHECK(tf_weight(profile, TermFunction::MethodPlusProblem) ==
          doctest::Approx(1.0 / 15).epsilon(1e-12));
}

TEST_CASE("tf_weight normalization: weights of a positive profile sum to 1") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        TermFunctionProfile profile;
        for (auto& c : profile.counts) c = static_cast<std::uint32_t>(rng.next(20));
        if (profile.total() == 0) continue;
        double sum = 0.0;
        for (TermFunction tf : kRankingTermFunctions) sum += tf_weight(profile, tf);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("tf_weight zero-profile fallback and single-function profile") {
    CHECK(tf_weight({{0, 0, 0, 0}}, TermFunction::Problem) == 0.0);
    CHECK(tf_weight({{0, 5, 0, 0}}, TermFunction::Method) == 1.0);
}

TEST_CASE("tf_weight rejects non-ranking query functions") {
    CHECK_THROWS_AS(tf_weight({{1, 1, 1, 1}}, TermFunction::Dataset), std::invalid_argument);
}

TEST_CASE("tfw_score fixtures") {
    CHECK(tfw_score(7.3, 0.0, 1.0) == doctest::Approx(7.3).epsilon(1e-12));
    CHECK(tfw_score(7.3, 0.0, 0.2) == doctest::Approx(7.3).epsilon(1e-12));
    CHECK(tfw_score(10.0, 4.0 / 15, 1.0) == doctest::Approx(10.0 * 19.0 / 15).epsilon(1e-9));
    CHECK(tfw_score(10.0, 4.0 / 15, 0.5) == doctest::Approx(10.0 * (1 + 2.0 / 15)).epsilon(1e-9));
}

TEST_CASE("tfw dominance: combined score never drops a non-negative bm25 score") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const double bm25 = rng.unit() * 20.0;
        const double weight = rng.unit();
        const double alpha = 0.05 + rng.unit() * 0.95;
        const double combined = tfw_score(bm25, weight, alpha);
        CHECK(combined >= bm25);
        if (weight == 0.0) {
            CHECK(combined == bm25);
        } else if (bm25 > 0.0) {
            CHECK(combined > bm25);
        }
    }
    CHECK(tfw_score(5.0, 0.0, 1.0) == 5.0);
}

namespace {

struct Fixture {
    Corpus corpus;
    ProfileMap profiles;
    Tokenizer tokenizer;

    Fixture() {
        // two textually identical candidates with different profiles, one
        // distractor, one future-year candidate
        corpus.candidates.push_back({"a1", "shared topic words", "", 2000});
        corpus.candidates.push_back({"a2", "shared topic words", "", 2001});
        corpus.candidates.push_back({"b1", "unrelated content here", "", 1999});
        corpus.candidates.push_back({"f1", "shared topic words", "", 2012});
        // distractors keep df low relative to N so matching idf stays positive
        corpus.candidates.push_back({"z1", "quantum chemistry simulation", "", 1998});
        corpus.candidates.push_back({"z2", "protein folding dynamics", "", 1998});
        corpus.candidates.push_back({"z3", "compiler register allocation", "", 1998});
        corpus.candidates.push_back({"z4", "wireless channel estimation", "", 1998});
        profiles["a1"] = {{8, 1, 1, 0}};   // strongly "problem"
        profiles["a2"] = {{1, 8, 1, 0}};   // strongly "method"
        profiles["b1"] = {{0, 0, 0, 0}};
        profiles["f1"] = {{0, 0, 0, 0}};
        profiles["z1"] = {{0, 0, 0, 0}};
        profiles["z2"] = {{0, 0, 0, 0}};
        profiles["z3"] = {{0, 0, 0, 0}};
        profiles["z4"] = {{0, 0, 0, 0}};
    }

    Index index() const { return Index::build(corpus.candidates, tokenizer); }
};

}  // namespace

TEST_CASE("recommend applies the year filter") {
    Fixture fx;
    Query query{"shared topic", TermFunction::Problem, 2010, 1.0};
    RankedList ranked =
        recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, {});
    for (const auto& e : ranked) CHECK(e.cand_id != "f1");
}

TEST_CASE("candidates without a year pass the filter only under the lenient flag") {
    Fixture fx;
    fx.corpus.candidates.push_back({"u1", "shared topic words", "", std::nullopt});
    fx.profiles["u1"] = {{0, 0, 0, 0}};
    Query query{"shared topic", TermFunction::Problem, 2010, 1.0};
    RecommendOptions options;
    RankedList strict =
        recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, options);
    for (const auto& e : strict) CHECK(e.cand_id != "u1");
    options.lenient_year = true;
    RankedList lenient =
        recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, options);
    bool found = false;
    for (const auto& e : lenient) found = found || e.cand_id == "u1";
    CHECK(found);
}

TEST_CASE("no year cutoff disables the filter") {
    Fixture fx;
    Query query{"shared topic", TermFunction::Problem, std::nullopt, 1.0};
    RankedList ranked =
        recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, {});
    CHECK(ranked.size() == 8);
}

TEST_CASE("all-zero profiles make tfw output identical to plain") {
    Fixture fx;
    for (auto& [id, profile] : fx.profiles) profile = {{0, 0, 0, 0}};
    Query query{"shared topic", TermFunction::Problem, std::nullopt, 1.0};
    RecommendOptions plain;
    plain.variant = Variant::PlainBm25;
    RecommendOptions tfw;
    tfw.variant = Variant::TfwBm25;
    RankedList a = recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, plain);
    RankedList b = recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, tfw);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].cand_id == b[i].cand_id);
        CHECK(a[i].score == doctest::Approx(b[i].score).epsilon(1e-12));
    }
}

TEST_CASE("equal bm25, higher weight ranks strictly higher under tfw") {
    Fixture fx;
    Query query{"shared topic", TermFunction::Problem, std::nullopt, 1.0};
    RecommendOptions plain;
    plain.variant = Variant::PlainBm25;
    RankedList base = recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, plain);
    // a1 and a2 are textually identical, so plain scores tie (a1 first by id)
    CHECK(base[0].cand_id == "a1");
    CHECK(base[0].score == doctest::Approx(base[1].score).epsilon(1e-12));

    RecommendOptions tfw;
    RankedList combined = recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, tfw);
    CHECK(combined[0].cand_id == "a1");
    CHECK(combined[0].score > combined[1].score);

    Query method_query{"shared topic", TermFunction::Method, std::nullopt, 1.0};
    RankedList flipped =
        recommend(method_query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, tfw);
    CHECK(flipped[0].cand_id == "a2");
}

TEST_CASE("truncation to top_n") {
    Fixture fx;
    Query query{"shared topic", TermFunction::Problem, std::nullopt, 1.0};
    RecommendOptions options;
    options.top_n = 2;
    RankedList ranked =
        recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, options);
    CHECK(ranked.size() == 2);
}

TEST_CASE("recommend rejects invalid arguments") {
    Fixture fx;
    Query query{"shared topic", TermFunction::Problem, std::nullopt, 1.0};
    RecommendOptions options;
    options.top_n = 0;
    CHECK_THROWS_AS(recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, options),
                    std::invalid_argument);
    Query bad_alpha{"x", TermFunction::Problem, std::nullopt, 0.0};
    CHECK_THROWS_AS(recommend(bad_alpha, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, {}),
                    std::invalid_argument);
    Query bad_tf{"x", TermFunction::Dataset, std::nullopt, 1.0};
    CHECK_THROWS_AS(recommend(bad_tf, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, {}),
                    std::invalid_argument);
}

TEST_CASE("mismatched index and profile collections are rejected") {
    Fixture fx;
    fx.profiles["ghost"] = {{1, 0, 0, 0}};
    Query query{"shared topic", TermFunction::Problem, std::nullopt, 1.0};
    CHECK_THROWS_AS(recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, {}),
                    std::invalid_argument);
}

TEST_CASE("order preservation within equal weights") {
    Fixture fx;
    // all candidates share the same profile: tfw order equals plain order
    for (auto& [id, profile] : fx.profiles) profile = {{3, 1, 1, 0}};
    Query query{"shared topic words content", TermFunction::Problem, std::nullopt, 1.0};
    RecommendOptions plain;
    plain.variant = Variant::PlainBm25;
    RankedList a = recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, plain);
    RankedList b = recommend(query, fx.index(), fx.profiles, fx.corpus, fx.tokenizer, {}, {});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].cand_id == b[i].cand_id);
}

TEST_CASE("profile dump and load round trip") {
    Fixture fx;
    std::ostringstream out;
    save_profiles(fx.profiles, out);
    std::istringstream in(out.str());
    CHECK(load_profiles(in) == fx.profiles);
}

TEST_CASE("load_profiles rejects malformed counts") {
    std::istringstream in(R"({"cand_id":"c1","counts":[1,2,3]})");
    CHECK_THROWS(load_profiles(in));
}
