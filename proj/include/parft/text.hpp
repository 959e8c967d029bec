#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace parft {

using TokenSeq = std::vector<std::string>;

/// Whitespace-splitting tokenizer. This is the single tokenizer shared by
/// the template parser, the length rewards, the text metrics and the policy
/// vocabulary; a "token" everywhere in this library means one of its words.
inline TokenSeq tokenize(std::string_view text) {
    TokenSeq out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.emplace_back(text.substr(start, i - start));
    }
    return out;
}

inline std::string join_tokens(const TokenSeq& tokens, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += sep;
        out += tokens[i];
    }
    return out;
}

inline std::string strip_punct(std::string_view word) {
    std::size_t b = 0, e = word.size();
    auto is_punct = [](char c) {
        return std::ispunct(static_cast<unsigned char>(c)) != 0;
    };
    while (b < e && is_punct(word[b])) ++b;
    while (e > b && is_punct(word[e - 1])) --e;
    return std::string(word.substr(b, e - b));
}

/// A token counts as a standalone option letter when, after stripping
/// surrounding punctuation, it is a single capital A-E ("(B)" -> B,
/// "Bring" -> none).
inline std::optional<char> standalone_option_letter(std::string_view token) {
    std::string core = strip_punct(token);
    if (core.size() == 1 && core[0] >= 'A' && core[0] <= 'E') return core[0];
    return std::nullopt;
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace parft
