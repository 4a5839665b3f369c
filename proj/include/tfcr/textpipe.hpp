#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tfcr {

/// Ordered list of normalized terms (lowercase, ASCII-folded, stopword-free,
/// numeric-free, Porter-stemmed). Duplicates and order are preserved.
using TokenStream = std::vector<std::string>;

/// FNV-1a 64-bit hash, used as the stopword-file checksum.
std::uint64_t fnv1a64(std::span<const char> bytes);

/// Checksum of the shipped stopwords.txt. A stopword file loaded from disk
/// must hash to this value unless verification is disabled.
inline constexpr std::uint64_t kStopwordsChecksum = 0x9f18fa33512e19faULL;

class Tokenizer {
public:
    /// Tokenizer with the built-in stopword list (identical to the shipped
    /// stopwords.txt).
    Tokenizer();

    /// Loads stopwords from a one-word-per-line file. Throws
    /// std::runtime_error if the file is unreadable or, when verify_checksum
    /// is set, if its bytes do not hash to kStopwordsChecksum.
    static Tokenizer from_stopword_file(const std::string& path, bool verify_checksum = true);

    /// Lowercases, ASCII-folds, splits on non-alphanumerics, removes
    /// all-digit tokens and stopwords, then Porter-stems the survivors.
    TokenStream tokenize(std::string_view text) const;

    bool is_stopword(const std::string& word) const { return stopwords_.contains(word); }

private:
    explicit Tokenizer(std::unordered_set<std::string> stopwords)
        : stopwords_(std::move(stopwords)) {}

    std::unordered_set<std::string> stopwords_;
};

}  // namespace tfcr
