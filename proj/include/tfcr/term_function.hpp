#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace tfcr {

/// Semantic role of a related-work paragraph. Nine categories; the four
/// "ranking" functions (Problem, Method, ProblemPlusMethod, MethodPlusProblem)
/// are the only ones accepted as query term functions.
enum class TermFunction {
    Application,
    Dataset,
    Evaluation,
    Method,
    MethodPlusProblem,
    Problem,
    ProblemPlusMethod,
    Tool,
    TopicIrrelevant,
};

inline constexpr std::size_t kNumTermFunctions = 9;

inline constexpr std::array<TermFunction, kNumTermFunctions> kAllTermFunctions = {
    TermFunction::Application,       TermFunction::Dataset,
    TermFunction::Evaluation,        TermFunction::Method,
    TermFunction::MethodPlusProblem, TermFunction::Problem,
    TermFunction::ProblemPlusMethod, TermFunction::Tool,
    TermFunction::TopicIrrelevant,
};

/// Canonical order of the profile count vector: (problem, method,
/// problem+method, method+problem).
inline constexpr std::array<TermFunction, 4> kRankingTermFunctions = {
    TermFunction::Problem,
    TermFunction::Method,
    TermFunction::ProblemPlusMethod,
    TermFunction::MethodPlusProblem,
};

constexpr bool is_ranking_tf(TermFunction tf) {
    return tf == TermFunction::Problem || tf == TermFunction::Method ||
           tf == TermFunction::ProblemPlusMethod || tf == TermFunction::MethodPlusProblem;
}

/// Index of a ranking term function in the canonical count vector.
constexpr std::optional<std::size_t> ranking_index(TermFunction tf) {
    switch (tf) {
    case TermFunction::Problem: return 0;
    case TermFunction::Method: return 1;
    case TermFunction::ProblemPlusMethod: return 2;
    case TermFunction::MethodPlusProblem: return 3;
    default: return std::nullopt;
    }
}

std::string_view to_string(TermFunction tf);

/// Parses a canonical label ("problem", "method+problem", ...). Empty optional
/// for anything else; labels are case-sensitive.
std::optional<TermFunction> parse_term_function(std::string_view label);

/// Comma-separated list of the four valid query labels, for error messages.
std::string ranking_tf_labels();

}  // namespace tfcr
