#include "tfcr/textpipe.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tfcr/porter.hpp"

namespace tfcr {

std::uint64_t fnv1a64(std::span<const char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

// Identical content to data/stopwords.txt; kStopwordsChecksum covers the file.
constexpr const char* kDefaultStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
    "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
    "for", "with", "about", "against", "between", "into", "through", "during", "before",
    "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
    "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such",
    "no", "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can",
    "will", "just", "don", "should", "now",
};

// Single-character ASCII folding for the Latin-1 supplement. Returns 0 when
// no single-character mapping exists (the codepoint then acts as a boundary).
char fold_latin1(char32_t cp) {
    if (cp >= 0xC0 && cp <= 0xDE) cp += 0x20;  // uppercase block folds onto lowercase
    switch (cp) {
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5: return 'a';
    case 0xE7: return 'c';
    case 0xE8: case 0xE9: case 0xEA: case 0xEB: return 'e';
    case 0xEC: case 0xED: case 0xEE: case 0xEF: return 'i';
    case 0xF0: return 'd';
    case 0xF1: return 'n';
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8: return 'o';
    case 0xF9: case 0xFA: case 0xFB: case 0xFC: return 'u';
    case 0xFD: case 0xFF: return 'y';
    default: return 0;
    }
}

// Minimal UTF-8 decoder; malformed sequences decode as single boundary bytes.
char32_t next_codepoint(std::string_view text, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
    unsigned char c0 = byte(i);
    if (c0 < 0x80) {
        ++i;
        return c0;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((c0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = c0 & 0x1F;
    } else if ((c0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = c0 & 0x0F;
    } else if ((c0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = c0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(extra) >= text.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char c = byte(i + static_cast<std::size_t>(k));
        if ((c & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

bool all_digits(const std::string& token) {
    return std::all_of(token.begin(), token.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Tokenizer::Tokenizer()
    : stopwords_(std::begin(kDefaultStopwords), std::end(kDefaultStopwords)) {}

Tokenizer Tokenizer::from_stopword_file(const std::string& path, bool verify_checksum) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open stopword file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    if (verify_checksum) {
        std::uint64_t h = fnv1a64(std::span<const char>(content.data(), content.size()));
        if (h != kStopwordsChecksum) {
            std::ostringstream msg;
            msg << "stopword file checksum mismatch for " << path << ": got " << std::hex << h
                << ", expected " << kStopwordsChecksum;
            throw std::runtime_error(msg.str());
        }
    }
    std::unordered_set<std::string> words;
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    if (words.empty()) throw std::runtime_error("stopword file is empty: " + path);
    return Tokenizer(std::move(words));
}

TokenStream Tokenizer::tokenize(std::string_view text) const {
    TokenStream out;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        std::string raw;
        raw.swap(current);
        if (all_digits(raw)) return;
        if (stopwords_.contains(raw)) return;
        std::string stemmed = porter_stem(raw);
        if (stemmed.empty() || stopwords_.contains(stemmed)) return;
        out.push_back(std::move(stemmed));
    };
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = next_codepoint(text, i);
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
                current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
                continue;
            }
        } else if (char folded = fold_latin1(cp); folded != 0) {
            current.push_back(folded);
            continue;
        }
        flush();
    }
    flush();
    return out;
}

}  // namespace tfcr
