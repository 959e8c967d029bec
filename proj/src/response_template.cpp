#include "parft/response_template.hpp"

#include <array>
#include <stdexcept>

namespace parft {
namespace {

enum TagId {
    kTagObsOpen = 0,
    kTagObsClose,
    kTagThinkOpen,
    kTagThinkClose,
    kTagAnswerOpen,
    kTagAnswerClose,
    kTagCount
};

constexpr std::array<std::string_view, kTagCount> kTagText = {
    kObsOpen, kObsClose, kThinkOpen, kThinkClose, kAnswerOpen, kAnswerClose,
};

constexpr std::array<std::string_view, 3> kBlockName = {"observation", "think", "answer"};

struct Item {
    bool is_tag;
    int tag;               // valid when is_tag
    std::string_view text; // valid when !is_tag
};

// Lex into alternating text runs and exact tag literals.
std::vector<Item> lex(std::string_view text) {
    std::vector<Item> items;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = std::string_view::npos;
        int best_tag = -1;
        for (int t = 0; t < kTagCount; ++t) {
            std::size_t at = text.find(kTagText[t], pos);
            if (at < best) {
                best = at;
                best_tag = t;
            }
        }
        if (best == std::string_view::npos) {
            items.push_back({false, -1, text.substr(pos)});
            break;
        }
        if (best > pos) items.push_back({false, -1, text.substr(pos, best - pos)});
        items.push_back({true, best_tag, {}});
        pos = best + kTagText[best_tag].size();
    }
    return items;
}

bool is_blank(std::string_view s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

ParseResult fail(FormatErrorKind kind, std::string detail) {
    return ParseResult{std::nullopt, FormatError{kind, std::move(detail)}};
}

}  // namespace

ParseResult parse_response(std::string_view text) {
    const std::vector<Item> items = lex(text);
    std::array<TokenSeq, 3> segs;
    std::size_t i = 0;

    for (int block = 0; block < 3; ++block) {
        const int open_tag = 2 * block;
        const int close_tag = 2 * block + 1;

        // Expect the opening tag, allowing only whitespace before it.
        for (;; ++i) {
            if (i == items.size())
                return fail(FormatErrorKind::MissingTag,
                            std::string(kTagText[open_tag]) + " not found");
            const Item& it = items[i];
            if (!it.is_tag) {
                if (!is_blank(it.text))
                    return fail(FormatErrorKind::StrayTextOutsideTags,
                                "text outside tags before <" + std::string(kBlockName[block]) + ">");
                continue;
            }
            if (it.tag == open_tag) {
                ++i;
                break;
            }
            // Some other tag where the opening tag belongs: out of order if
            // the expected tag occurs later, otherwise missing.
            for (std::size_t j = i + 1; j < items.size(); ++j)
                if (items[j].is_tag && items[j].tag == open_tag)
                    return fail(FormatErrorKind::OutOfOrderTag,
                                std::string(kTagText[it.tag]) + " where " +
                                    std::string(kTagText[open_tag]) + " was expected");
            return fail(FormatErrorKind::MissingTag,
                        std::string(kTagText[open_tag]) + " not found");
        }

        // Collect segment text until the matching close tag.
        std::string body;
        for (;; ++i) {
            if (i == items.size())
                return fail(FormatErrorKind::MissingTag,
                            std::string(kTagText[close_tag]) + " not found");
            const Item& it = items[i];
            if (!it.is_tag) {
                body.append(it.text);
                continue;
            }
            if (it.tag == close_tag) {
                ++i;
                break;
            }
            return fail(FormatErrorKind::NestedTag,
                        std::string(kTagText[it.tag]) + " inside <" +
                            std::string(kBlockName[block]) + "> block");
        }
        segs[block] = tokenize(body);
    }

    // Only whitespace may remain.
    for (; i < items.size(); ++i) {
        const Item& it = items[i];
        if (it.is_tag)
            return fail(FormatErrorKind::OutOfOrderTag,
                        std::string(kTagText[it.tag]) + " after </answer>");
        if (!is_blank(it.text))
            return fail(FormatErrorKind::StrayTextOutsideTags, "text after </answer>");
    }

    ResponseSegments out;
    out.observation = std::move(segs[0]);
    out.think = std::move(segs[1]);
    out.answer = std::move(segs[2]);
    out.raw_text = std::string(text);
    return ParseResult{std::move(out), std::nullopt};
}

std::string render_response(const ResponseSegments& segments) {
    std::string out;
    out += kObsOpen;
    out += join_tokens(segments.observation);
    out += kObsClose;
    out += kThinkOpen;
    out += join_tokens(segments.think);
    out += kThinkClose;
    out += kAnswerOpen;
    out += join_tokens(segments.answer);
    out += kAnswerClose;
    return out;
}

std::string normalize_response(std::string_view text) {
    ParseResult r = parse_response(text);
    if (!r.ok()) throw std::invalid_argument("normalize_response: " + r.error->detail);
    return render_response(*r.segments);
}

ScannedResponse scan_response(std::string_view text) {
    const std::vector<Item> items = lex(text);
    ScannedResponse out;
    std::array<std::optional<TokenSeq>*, 3> slot = {&out.observation, &out.think, &out.answer};

    std::size_t i = 0;
    int next_block = 0;  // blocks may only be matched in template order
    bool clean_tail = true;
    while (i < items.size()) {
        const Item& it = items[i];
        if (!it.is_tag) {
            if (!is_blank(it.text)) {
                clean_tail = false;
                break;
            }
            ++i;
            continue;
        }
        // A block may start here; anything else ends the scan.
        int block = -1;
        for (int b = next_block; b < 3; ++b)
            if (it.tag == 2 * b) block = b;
        if (block < 0) {
            clean_tail = false;
            break;
        }
        // Consume the block body up to its close tag.
        std::string body;
        std::size_t j = i + 1;
        bool closed = false;
        for (; j < items.size(); ++j) {
            if (!items[j].is_tag) {
                body.append(items[j].text);
                continue;
            }
            if (items[j].tag == 2 * block + 1) closed = true;
            break;
        }
        if (!closed) {
            clean_tail = false;
            break;
        }
        *slot[block] = tokenize(body);
        next_block = block + 1;
        i = j + 1;
    }

    out.form_perception = out.observation.has_value();
    out.form_reasoning =
        out.think.has_value() && out.answer.has_value() && clean_tail;
    return out;
}

int check_format(std::string_view text, Process process) {
    ScannedResponse s = scan_response(text);
    return (process == Process::Perception ? s.form_perception : s.form_reasoning) ? 1 : 0;
}

TokenSeq segments_to_tokens(const ResponseSegments& segments) {
    TokenSeq out;
    out.reserve(segments.observation.size() + segments.think.size() + segments.answer.size() + 6);
    out.emplace_back(kObsOpen);
    out.insert(out.end(), segments.observation.begin(), segments.observation.end());
    out.emplace_back(kObsClose);
    out.emplace_back(kThinkOpen);
    out.insert(out.end(), segments.think.begin(), segments.think.end());
    out.emplace_back(kThinkClose);
    out.emplace_back(kAnswerOpen);
    out.insert(out.end(), segments.answer.begin(), segments.answer.end());
    out.emplace_back(kAnswerClose);
    return out;
}

std::vector<Process> tag_tokens(const TokenSeq& tokens) {
    std::vector<Process> tags(tokens.size(), Process::Reasoning);
    std::size_t open = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == kObsOpen) {
            open = i;
            break;
        }
    }
    if (open == tokens.size()) return tags;
    for (std::size_t i = open; i < tokens.size(); ++i) {
        tags[i] = Process::Perception;
        if (tokens[i] == kObsClose && i > open) return tags;
    }
    // Unclosed observation block: everything after the open tag stays
    // reasoning so a runaway block cannot absorb the whole rollout.
    return std::vector<Process>(tokens.size(), Process::Reasoning);
}

}  // namespace parft
