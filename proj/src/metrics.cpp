#include "parft/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace parft {

std::string_view task_type_name(TaskType t) {
    switch (t) {
        case TaskType::MultipleChoice: return "multiple_choice";
        case TaskType::Numerical: return "numerical";
        case TaskType::OCR: return "ocr";
        case TaskType::FreeForm: return "free_form";
        case TaskType::Regression: return "regression";
    }
    return "unknown";
}

std::optional<TaskType> task_type_from_name(std::string_view name) {
    for (int i = 0; i < kNumTaskTypes; ++i) {
        TaskType t = static_cast<TaskType>(i);
        if (name == task_type_name(t)) return t;
    }
    return std::nullopt;
}

double word_error_rate(const TokenSeq& hypothesis, const TokenSeq& reference) {
    if (reference.empty())
        throw std::invalid_argument("word_error_rate: empty reference");
    const std::size_t n = hypothesis.size(), m = reference.size();
    // Two-row Levenshtein over words.
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (hypothesis[i - 1] != reference[j - 1]);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(prev[m]) / static_cast<double>(m);
}

namespace {

std::unordered_map<std::string, int> ngram_counts(const TokenSeq& seq, std::size_t n) {
    std::unordered_map<std::string, int> counts;
    if (seq.size() < n) return counts;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
        std::string key;
        for (std::size_t k = 0; k < n; ++k) {
            if (k) key += '\x1f';
            key += seq[i + k];
        }
        ++counts[key];
    }
    return counts;
}

double f1(double overlap, double pred_total, double ref_total) {
    if (pred_total <= 0 || ref_total <= 0) return 0.0;
    const double p = overlap / pred_total;
    const double r = overlap / ref_total;
    if (p + r <= 0) return 0.0;
    return 2.0 * p * r / (p + r);
}

double rouge_n_f1(const TokenSeq& pred, const TokenSeq& ref, std::size_t n) {
    auto pc = ngram_counts(pred, n);
    auto rc = ngram_counts(ref, n);
    int overlap = 0;
    for (const auto& [gram, count] : rc) {
        auto it = pc.find(gram);
        if (it != pc.end()) overlap += std::min(count, it->second);
    }
    int pred_total = 0, ref_total = 0;
    for (const auto& kv : pc) pred_total += kv.second;
    for (const auto& kv : rc) ref_total += kv.second;
    return f1(overlap, pred_total, ref_total);
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1
                                            : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
        std::fill(cur.begin(), cur.end(), 0);
    }
    return prev[b.size()];
}

}  // namespace

double rouge_average(const TokenSeq& prediction, const TokenSeq& reference) {
    if (reference.empty())
        throw std::invalid_argument("rouge_average: empty reference");
    if (prediction.empty()) return 0.0;

    double sum = rouge_n_f1(prediction, reference, 1);
    int components = 1;
    if (reference.size() >= 2) {
        sum += rouge_n_f1(prediction, reference, 2);
        ++components;
    }
    const double l = static_cast<double>(lcs_length(prediction, reference));
    sum += f1(l, static_cast<double>(prediction.size()),
              static_cast<double>(reference.size()));
    ++components;
    return sum / components;
}

std::optional<double> extract_number(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) continue;
        std::size_t start = i;
        if (start > 0 && text[start - 1] == '.') --start;
        if (start > 0 && (text[start - 1] == '-' || text[start - 1] == '+')) --start;
        std::string buf(text.substr(start));
        char* end = nullptr;
        const double v = std::strtod(buf.c_str(), &end);
        if (end != buf.c_str()) return v;
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<char> extract_option_letter(std::string_view text) {
    for (const std::string& tok : tokenize(text)) {
        if (auto c = standalone_option_letter(tok)) return c;
    }
    return std::nullopt;
}

namespace {

bool numbers_equal(double a, double b) {
    if (a == b) return true;
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TaskScore task_accuracy_detail(TaskType type, std::string_view prediction,
                               std::string_view reference) {
    if (reference.empty())
        throw std::invalid_argument("task_accuracy: empty reference");
    switch (type) {
        case TaskType::MultipleChoice: {
            auto p = extract_option_letter(prediction);
            auto r = extract_option_letter(reference);
            return {p && r && *p == *r ? 1.0 : 0.0, false};
        }
        case TaskType::Numerical: {
            auto p = extract_number(prediction);
            if (!p) return {0.0, true};
            auto r = extract_number(reference);
            if (!r) return {0.0, false};
            return {numbers_equal(*p, *r) ? 1.0 : 0.0, false};
        }
        case TaskType::OCR: {
            const double wer = word_error_rate(tokenize(prediction), tokenize(reference));
            return {std::max(0.0, 1.0 - wer), false};
        }
        case TaskType::FreeForm:
            return {rouge_average(tokenize(prediction), tokenize(reference)), false};
        case TaskType::Regression: {
            auto p = extract_number(prediction);
            if (!p) return {0.0, true};
            auto r = extract_number(reference);
            if (!r) return {0.0, false};
            const double rel = std::abs(*p - *r) / std::max(std::abs(*r), 1e-9);
            return {std::clamp(1.0 - rel, 0.0, 1.0), false};
        }
    }
    return {0.0, false};
}

}  // namespace parft
