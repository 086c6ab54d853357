#include "hopsynth/metrics.h"

#include <algorithm>
#include <unordered_map>

#include "text_util.h"

namespace hopsynth {

std::vector<TokenSpan> token_spans(std::string_view text) {
    std::vector<TokenSpan> spans;
    std::size_t pos = 0;
    bool in_word = false;
    std::size_t word_begin = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = text::next_code_point(text, pos);
        if (text::is_word(cp)) {
            if (!in_word) {
                in_word = true;
                word_begin = start;
            }
            continue;
        }
        if (in_word) {
            spans.push_back({word_begin, start});
            in_word = false;
        }
        if (!text::is_space(cp)) spans.push_back({start, pos});
    }
    if (in_word) spans.push_back({word_begin, text.size()});
    return spans;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& s : token_spans(text)) out.emplace_back(text.substr(s.begin, s.end - s.begin));
    return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    std::string current;
    bool have = false;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = text::next_code_point(text, pos);
        if (text::is_space(cp)) {
            if (have) out.push_back(std::move(current));
            current.clear();
            have = false;
        } else {
            current.append(text.substr(start, pos - start));
            have = true;
        }
    }
    if (have) out.push_back(std::move(current));
    return out;
}

namespace {

// Mirrors re.sub(r'\b(a|an|the)\b', ' ', s) over decoded code points.
std::u32string remove_articles(const std::u32string& s) {
    static const std::u32string kArticles[] = {U"a", U"an", U"the"};
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const bool boundary_before = i == 0 || !text::is_word(s[i - 1]);
        bool matched = false;
        if (boundary_before) {
            for (const auto& art : kArticles) {
                if (s.compare(i, art.size(), art) != 0) continue;
                const std::size_t end = i + art.size();
                if (end == s.size() || !text::is_word(s[end])) {
                    out += U' ';
                    i = end;
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) out += s[i++];
    }
    return out;
}

}  // namespace

std::string normalize_answer(std::string_view input) {
    std::u32string cps;
    cps.reserve(input.size());
    for (std::size_t pos = 0; pos < input.size();) {
        const char32_t cp = text::to_lower(text::next_code_point(input, pos));
        if (!text::is_ascii_punct(cp)) cps += cp;
    }
    cps = remove_articles(cps);

    std::string out;
    out.reserve(cps.size());
    bool pending_space = false;
    for (char32_t cp : cps) {
        if (text::is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        text::append_utf8(out, cp);
    }
    return out;
}

double token_f1(std::string_view pred, std::string_view gold) {
    const auto p = split_whitespace(normalize_answer(pred));
    const auto g = split_whitespace(normalize_answer(gold));
    if (p.empty() && g.empty()) return 1.0;
    if (p.empty() || g.empty()) return 0.0;

    std::unordered_map<std::string, int> gold_counts;
    for (const auto& t : g) ++gold_counts[t];
    int same = 0;
    for (const auto& t : p) {
        auto it = gold_counts.find(t);
        if (it != gold_counts.end() && it->second > 0) {
            --it->second;
            ++same;
        }
    }
    if (same == 0) return 0.0;
    const double precision = static_cast<double>(same) / static_cast<double>(p.size());
    const double recall = static_cast<double>(same) / static_cast<double>(g.size());
    return 2.0 * precision * recall / (precision + recall);
}

bool exact_match(std::string_view pred, std::string_view gold) {
    return normalize_answer(pred) == normalize_answer(gold);
}

ScorePair score_pair(std::string_view pred, std::string_view gold) {
    ScorePair s;
    s.em = exact_match(pred, gold);
    s.f1 = s.em ? 1.0 : token_f1(pred, gold);
    return s;
}

}  // namespace hopsynth
