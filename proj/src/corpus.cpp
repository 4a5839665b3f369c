#include "tfcr/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace tfcr {

using nlohmann::json;

const CandidateDocument* Corpus::find_candidate(const std::string& cand_id) const {
    for (const auto& c : candidates) {
        if (c.cand_id == cand_id) return &c;
    }
    return nullptr;
}

const OriginalDocument* Corpus::find_original(const std::string& doc_id) const {
    for (const auto& d : originals) {
        if (d.doc_id == doc_id) return &d;
    }
    return nullptr;
}

namespace {

[[noreturn]] void fail(const std::string& file, std::size_t line, const std::string& what) {
    throw CorpusError(file + ":" + std::to_string(line) + ": " + what);
}

std::string trimmed(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

void warn_unknown_keys(const json& obj, const std::unordered_set<std::string>& known,
                       const std::string& where, LoadReport* report) {
    if (report == nullptr) return;
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.contains(key)) {
            report->warnings.push_back(where + ": ignoring unknown key '" + key + "'");
        }
    }
}

Paragraph parse_paragraph(const json& obj, const std::string& file, std::size_t line,
                          LoadReport* report) {
    Paragraph p;
    p.paragraph_id = obj.at("paragraph_id").get<std::string>();
    p.text = obj.at("text").get<std::string>();
    if (trimmed(p.text).empty()) {
        fail(file, line, "paragraph '" + p.paragraph_id + "' has empty text");
    }
    const auto label = obj.at("term_function").get<std::string>();
    auto tf = parse_term_function(label);
    if (!tf) {
        fail(file, line, "unknown term-function label '" + label + "'");
    }
    p.term_function = *tf;
    for (const auto& ref : obj.at("cited_refs")) {
        p.cited_refs.insert(ref.get<std::string>());
    }
    if (obj.contains("unannotated")) p.unannotated = obj.at("unannotated").get<bool>();
    warn_unknown_keys(obj, {"paragraph_id", "text", "term_function", "cited_refs", "unannotated"},
                      file + " paragraph '" + p.paragraph_id + "'", report);
    return p;
}

}  // namespace

Corpus load_corpus_streams(std::istream& originals, std::istream& candidates, bool lenient,
                           LoadReport* report) {
    Corpus corpus;
    std::string line;
    std::size_t lineno = 0;

    std::unordered_set<std::string> cand_ids;
    while (std::getline(candidates, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            fail("candidates", lineno, std::string("malformed record: ") + e.what());
        }
        CandidateDocument c;
        try {
            c.cand_id = obj.at("cand_id").get<std::string>();
            c.title = obj.at("title").get<std::string>();
            c.abstract = obj.at("abstract").get<std::string>();
            if (obj.contains("year") && !obj.at("year").is_null()) {
                c.year = obj.at("year").get<int>();
            }
        } catch (const json::exception& e) {
            fail("candidates", lineno, std::string("malformed record: ") + e.what());
        }
        if (c.title.empty()) fail("candidates", lineno, "candidate '" + c.cand_id + "' has empty title");
        if (!cand_ids.insert(c.cand_id).second) {
            fail("candidates", lineno, "duplicate cand_id '" + c.cand_id + "'");
        }
        warn_unknown_keys(obj, {"cand_id", "title", "abstract", "year"},
                          "candidates:" + std::to_string(lineno), report);
        corpus.candidates.push_back(std::move(c));
    }

    std::unordered_set<std::string> doc_ids;
    std::unordered_set<std::string> paragraph_ids;
    lineno = 0;
    while (std::getline(originals, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            fail("originals", lineno, std::string("malformed record: ") + e.what());
        }
        OriginalDocument d;
        try {
            d.doc_id = obj.at("doc_id").get<std::string>();
            d.title = obj.at("title").get<std::string>();
            d.abstract = obj.at("abstract").get<std::string>();
            d.year = obj.at("year").get<int>();
            d.field = obj.at("field").get<std::string>();
            for (const auto& pj : obj.at("paragraphs")) {
                d.paragraphs.push_back(parse_paragraph(pj, "originals", lineno, report));
            }
        } catch (const json::exception& e) {
            fail("originals", lineno, std::string("malformed record: ") + e.what());
        }
        if (d.year <= 0) fail("originals", lineno, "doc '" + d.doc_id + "' has year <= 0");
        if (!doc_ids.insert(d.doc_id).second) {
            fail("originals", lineno, "duplicate doc_id '" + d.doc_id + "'");
        }
        for (auto& p : d.paragraphs) {
            if (!paragraph_ids.insert(p.paragraph_id).second) {
                fail("originals", lineno, "duplicate paragraph_id '" + p.paragraph_id + "'");
            }
            std::set<std::string> resolved;
            for (const auto& ref : p.cited_refs) {
                if (cand_ids.contains(ref)) {
                    resolved.insert(ref);
                } else if (!lenient) {
                    fail("originals", lineno,
                         "paragraph '" + p.paragraph_id + "' cites unknown candidate '" + ref + "'");
                } else if (report != nullptr) {
                    ++report->dropped_refs;
                }
            }
            if (lenient) p.cited_refs = std::move(resolved);
        }
        warn_unknown_keys(obj, {"doc_id", "title", "abstract", "year", "field", "paragraphs"},
                          "originals:" + std::to_string(lineno), report);
        corpus.originals.push_back(std::move(d));
    }

    // Id-keyed set semantics: record order in the files is immaterial.
    std::sort(corpus.candidates.begin(), corpus.candidates.end(),
              [](const auto& a, const auto& b) { return a.cand_id < b.cand_id; });
    std::sort(corpus.originals.begin(), corpus.originals.end(),
              [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });

    if (report != nullptr) {
        report->n_originals = corpus.originals.size();
        report->n_candidates = corpus.candidates.size();
        for (const auto& d : corpus.originals) report->n_paragraphs += d.paragraphs.size();
    }
    return corpus;
}

Corpus load_corpus(const std::string& originals_path, const std::string& candidates_path,
                   bool lenient, LoadReport* report) {
    std::ifstream orig(originals_path);
    if (!orig) throw CorpusError("cannot open originals file: " + originals_path);
    std::ifstream cand(candidates_path);
    if (!cand) throw CorpusError("cannot open candidates file: " + candidates_path);
    return load_corpus_streams(orig, cand, lenient, report);
}

void save_corpus(const Corpus& corpus, std::ostream& originals, std::ostream& candidates) {
    for (const auto& c : corpus.candidates) {
        json obj;
        obj["cand_id"] = c.cand_id;
        obj["title"] = c.title;
        obj["abstract"] = c.abstract;
        obj["year"] = c.year ? json(*c.year) : json(nullptr);
        candidates << obj.dump() << "\n";
    }
    for (const auto& d : corpus.originals) {
        json obj;
        obj["doc_id"] = d.doc_id;
        obj["title"] = d.title;
        obj["abstract"] = d.abstract;
        obj["year"] = d.year;
        obj["field"] = d.field;
        json paras = json::array();
        for (const auto& p : d.paragraphs) {
            json pj;
            pj["paragraph_id"] = p.paragraph_id;
            pj["text"] = p.text;
            pj["term_function"] = std::string(to_string(p.term_function));
            pj["cited_refs"] = p.cited_refs;
            if (p.unannotated) pj["unannotated"] = true;
            paras.push_back(std::move(pj));
        }
        obj["paragraphs"] = std::move(paras);
        originals << obj.dump() << "\n";
    }
}

void save_corpus(const Corpus& corpus, const std::string& originals_path,
                 const std::string& candidates_path) {
    std::ofstream orig(originals_path);
    if (!orig) throw CorpusError("cannot open originals file for writing: " + originals_path);
    std::ofstream cand(candidates_path);
    if (!cand) throw CorpusError("cannot open candidates file for writing: " + candidates_path);
    save_corpus(corpus, orig, cand);
}

std::vector<std::string> validate_corpus(const Corpus& corpus) {
    std::vector<std::string> violations;
    std::unordered_set<std::string> cand_ids;
    for (const auto& c : corpus.candidates) {
        if (!cand_ids.insert(c.cand_id).second) {
            violations.push_back("duplicate cand_id '" + c.cand_id + "'");
        }
        if (c.title.empty()) {
            violations.push_back("candidate '" + c.cand_id + "' has empty title");
        }
    }
    std::unordered_set<std::string> doc_ids;
    std::unordered_set<std::string> paragraph_ids;
    for (const auto& d : corpus.originals) {
        if (!doc_ids.insert(d.doc_id).second) {
            violations.push_back("duplicate doc_id '" + d.doc_id + "'");
        }
        if (d.year <= 0) {
            violations.push_back("original '" + d.doc_id + "' has year <= 0");
        }
        for (const auto& p : d.paragraphs) {
            if (!paragraph_ids.insert(p.paragraph_id).second) {
                violations.push_back("duplicate paragraph_id '" + p.paragraph_id + "'");
            }
            std::string text = p.text;
            if (trimmed(text).empty()) {
                violations.push_back("paragraph '" + p.paragraph_id + "' has empty text");
            }
            if (p.cited_refs.empty() && p.term_function != TermFunction::TopicIrrelevant &&
                !p.unannotated) {
                violations.push_back("paragraph '" + p.paragraph_id +
                                     "' has no cited_refs but is annotated as '" +
                                     std::string(to_string(p.term_function)) + "'");
            }
            for (const auto& ref : p.cited_refs) {
                if (!cand_ids.contains(ref)) {
                    violations.push_back("paragraph '" + p.paragraph_id +
                                         "' cites unknown candidate '" + ref + "'");
                }
            }
        }
    }
    return violations;
}

}  // namespace tfcr
