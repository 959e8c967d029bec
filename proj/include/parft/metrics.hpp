#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "parft/text.hpp"

namespace parft {

enum class TaskType { MultipleChoice, Numerical, OCR, FreeForm, Regression };

inline constexpr int kNumTaskTypes = 5;

std::string_view task_type_name(TaskType t);
std::optional<TaskType> task_type_from_name(std::string_view name);

/// (substitutions + insertions + deletions) / |reference| via minimum
/// word-level edit distance. Reference must be non-empty.
double word_error_rate(const TokenSeq& hypothesis, const TokenSeq& reference);

/// Mean of ROUGE-1 F1, ROUGE-2 F1 and ROUGE-L F1, no stemming or stopword
/// removal. When the reference is too short to have bigrams the ROUGE-2
/// component is undefined and is left out of the mean, so identical
/// single-word sequences still score 1. Reference must be non-empty.
double rouge_average(const TokenSeq& prediction, const TokenSeq& reference);

/// First number appearing in the text, if any.
std::optional<double> extract_number(std::string_view text);

/// First standalone capital letter A-E in the text, if any.
std::optional<char> extract_option_letter(std::string_view text);

struct TaskScore {
    double value = 0.0;
    /// Set when a Numerical/Regression prediction contains no number; the
    /// score is 0 and callers may want to log the incident.
    bool unparsable_numeric = false;
};

/// Task-specific reasoning accuracy in [0,1]:
///   MultipleChoice  1 iff the extracted option letters match
///   Numerical       1 iff both parse as numbers equal to relative 1e-9
///   OCR             max(0, 1 - WER(prediction, reference))
///   FreeForm        rouge_average
///   Regression      1 - |pred - ref| / max(|ref|, 1e-9), clamped to [0,1]
TaskScore task_accuracy_detail(TaskType type, std::string_view prediction,
                               std::string_view reference);

inline double task_accuracy(TaskType type, std::string_view prediction,
                            std::string_view reference) {
    return task_accuracy_detail(type, prediction, reference).value;
}

}  // namespace parft
