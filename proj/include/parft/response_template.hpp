#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parft/text.hpp"

namespace parft {

// Response template:
//   <observation>...</observation><think>...</think><answer>...</answer>
// The observation block carries the perception process; think + answer carry
// the reasoning process.

inline constexpr std::string_view kObsOpen = "<observation>";
inline constexpr std::string_view kObsClose = "</observation>";
inline constexpr std::string_view kThinkOpen = "<think>";
inline constexpr std::string_view kThinkClose = "</think>";
inline constexpr std::string_view kAnswerOpen = "<answer>";
inline constexpr std::string_view kAnswerClose = "</answer>";

enum class Process { Perception, Reasoning };

struct ResponseSegments {
    TokenSeq observation;
    TokenSeq think;
    TokenSeq answer;
    std::string raw_text;

    TokenSeq reasoning_tokens() const {
        TokenSeq out = think;
        out.insert(out.end(), answer.begin(), answer.end());
        return out;
    }
};

enum class FormatErrorKind { MissingTag, OutOfOrderTag, StrayTextOutsideTags, NestedTag };

struct FormatError {
    FormatErrorKind kind;
    std::string detail;  // which tag / what text, human readable
};

struct ParseResult {
    std::optional<ResponseSegments> segments;
    std::optional<FormatError> error;
    bool ok() const { return segments.has_value(); }
};

/// Strict parse: the text must be exactly the three tagged blocks in order,
/// with nothing but whitespace around and between them. Total and
/// deterministic; on failure reports the first violated rule in text order.
ParseResult parse_response(std::string_view text);

/// Canonical rendering: blocks concatenated directly, tokens joined by single
/// spaces. render(parse(x)) == normalize(x) for every well-formed x.
std::string render_response(const ResponseSegments& segments);

/// Parse then re-render. Throws std::invalid_argument on unparsable input.
std::string normalize_response(std::string_view text);

/// Lenient per-process block scan used for partial-credit format rewards and
/// for scoring arbitrary rollouts. Blocks are located sequentially in
/// template order; the scan stops at the first stray text or unexpected tag,
/// leaving later blocks unlocated. form_reasoning additionally requires that
/// nothing but whitespace follows the answer block.
///
/// Invariant: form_perception && form_reasoning  <=>  parse_response succeeds.
struct ScannedResponse {
    std::optional<TokenSeq> observation;
    std::optional<TokenSeq> think;
    std::optional<TokenSeq> answer;
    bool form_perception = false;
    bool form_reasoning = false;
};

ScannedResponse scan_response(std::string_view text);

/// Binary per-process format reward (the regular-expression compliance check
/// realized as one lenient scan).
int check_format(std::string_view text, Process process);

/// Token sequence of a rendered response, tags included, in template order.
/// This is the form the policies consume and emit.
TokenSeq segments_to_tokens(const ResponseSegments& segments);

/// Per-token process tags for credit assignment over a sampled rollout
/// (tag tokens included). Tokens from the first <observation> through its
/// matching </observation> are perception; every other token, including all
/// tokens of malformed responses, is reasoning.
std::vector<Process> tag_tokens(const TokenSeq& tokens);

}  // namespace parft
