#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfcr/term_function.hpp"

namespace tfcr {

struct Paragraph {
    std::string paragraph_id;
    std::string text;
    TermFunction term_function = TermFunction::TopicIrrelevant;
    std::set<std::string> cited_refs;
    bool unannotated = false;

    bool operator==(const Paragraph&) const = default;
};

struct OriginalDocument {
    std::string doc_id;
    std::string title;
    std::string abstract;
    int year = 0;
    std::string field;
    std::vector<Paragraph> paragraphs;

    bool operator==(const OriginalDocument&) const = default;
};

struct CandidateDocument {
    std::string cand_id;
    std::string title;
    std::string abstract;
    std::optional<int> year;

    /// Indexed text is title + abstract.
    std::string indexed_text() const { return title + " " + abstract; }

    bool operator==(const CandidateDocument&) const = default;
};

struct Corpus {
    std::vector<OriginalDocument> originals;
    std::vector<CandidateDocument> candidates;

    const CandidateDocument* find_candidate(const std::string& cand_id) const;
    const OriginalDocument* find_original(const std::string& doc_id) const;

    bool operator==(const Corpus&) const = default;
};

struct LoadReport {
    std::size_t n_originals = 0;
    std::size_t n_candidates = 0;
    std::size_t n_paragraphs = 0;
    std::size_t dropped_refs = 0;
    std::vector<std::string> warnings;
};

/// Thrown on malformed records, duplicate ids, unknown labels, and (in strict
/// mode) dangling cited_refs. Messages carry the offending line number or id.
struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Loads a corpus from two JSONL files. In lenient mode dangling cited_refs
/// are dropped and counted in the report instead of raising.
Corpus load_corpus(const std::string& originals_path, const std::string& candidates_path,
                   bool lenient, LoadReport* report = nullptr);

/// Stream variants, used by load_corpus and by tests.
Corpus load_corpus_streams(std::istream& originals, std::istream& candidates, bool lenient,
                           LoadReport* report = nullptr);

/// Writes the corpus back out in the same JSONL schema (one record per line).
void save_corpus(const Corpus& corpus, std::ostream& originals, std::ostream& candidates);
void save_corpus(const Corpus& corpus, const std::string& originals_path,
                 const std::string& candidates_path);

/// Checks every type invariant; violations are returned as data, one message
/// each. Empty result means the corpus is consistent.
std::vector<std::string> validate_corpus(const Corpus& corpus);

}  // namespace tfcr
