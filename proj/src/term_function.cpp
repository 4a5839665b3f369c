#include "tfcr/term_function.hpp"

namespace tfcr {

std::string_view to_string(TermFunction tf) {
    switch (tf) {
    case TermFunction::Application: return "application";
    case TermFunction::Dataset: return "dataset";
    case TermFunction::Evaluation: return "evaluation";
    case TermFunction::Method: return "method";
    case TermFunction::MethodPlusProblem: return "method+problem";
    case TermFunction::Problem: return "problem";
    case TermFunction::ProblemPlusMethod: return "problem+method";
    case TermFunction::Tool: return "tool";
    case TermFunction::TopicIrrelevant: return "topic-irrelevant";
    }
    return "";
}

std::optional<TermFunction> parse_term_function(std::string_view label) {
    for (TermFunction tf : kAllTermFunctions) {
        if (label == to_string(tf)) return tf;
    }
    return std::nullopt;
}

std::string ranking_tf_labels() {
    std::string out;
    for (TermFunction tf : kRankingTermFunctions) {
        if (!out.empty()) out += ", ";
        out += to_string(tf);
    }
    return out;
}

}  // namespace tfcr
