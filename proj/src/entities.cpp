#include "hopsynth/entities.h"

#include <algorithm>
#include <set>

#include "text_util.h"

namespace hopsynth {

namespace {

struct Word {
    std::size_t core_begin;
    std::size_t core_end;
    bool capitalized;
    bool has_digit;
    bool breaks_after;   // trailing , ; : ! ? or a sentence-ending period
    bool breaks_before;  // leading bracket or quote
    bool ends_sentence;
};

bool is_leading_mark(char c) { return c == '(' || c == '[' || c == '"' || c == '\'' || c == '{'; }
bool is_trailing_mark(char c) {
    return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == ')' || c == ']' ||
           c == '"' || c == '\'' || c == '}';
}

std::vector<Word> split_words(const std::string& s) {
    std::vector<Word> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && static_cast<unsigned char>(s[i]) <= ' ') ++i;
        if (i >= s.size()) break;
        std::size_t end = i;
        while (end < s.size() && static_cast<unsigned char>(s[end]) > ' ') ++end;

        std::size_t b = i, e = end;
        bool lead = false;
        while (b < e && is_leading_mark(s[b])) {
            ++b;
            lead = true;
        }
        std::size_t core_e = e;
        while (core_e > b && is_trailing_mark(s[core_e - 1])) --core_e;
        const std::string_view core(s.data() + b, core_e - b);
        const std::string_view trail(s.data() + core_e, e - core_e);

        // Initials ("K.") and dotted abbreviations ("F.C.") keep their period.
        const bool initial = core.size() == 1 && text::is_ascii_upper(core[0]);
        const bool dotted = core.find('.') != std::string_view::npos;
        const bool abbrev_period = (initial || dotted) && !trail.empty() && trail[0] == '.';
        if (abbrev_period) ++core_e;

        Word w{};
        w.core_begin = b;
        w.core_end = core_e;
        w.capitalized = core_e > b && text::is_ascii_upper(s[b]);
        w.has_digit = std::any_of(core.begin(), core.end(), [](char c) { return text::is_ascii_digit(c); });
        w.breaks_before = lead;
        const std::string_view rest = abbrev_period ? trail.substr(1) : trail;
        w.ends_sentence = rest.find_first_of(".!?") != std::string_view::npos;
        w.breaks_after = w.ends_sentence || rest.find_first_of(",;:)]\"'}") != std::string_view::npos;
        if (core_e > b) words.push_back(w);
        i = end;
    }
    return words;
}

}  // namespace

std::vector<std::string> HeuristicRecognizer::entities(const std::string& text) const {
    const auto words = split_words(text);
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto emit = [&](std::size_t first, std::size_t last) {
        std::string e = text.substr(words[first].core_begin, words[last].core_end - words[first].core_begin);
        if (seen.insert(e).second) out.push_back(std::move(e));
    };

    bool sentence_start = true;
    std::size_t i = 0;
    while (i < words.size()) {
        const Word& w = words[i];
        if (w.capitalized || w.has_digit) {
            const bool digit_run = !w.capitalized;
            const bool started_sentence = sentence_start;
            std::size_t j = i;
            while (!words[j].breaks_after && j + 1 < words.size() && !words[j + 1].breaks_before &&
                   (digit_run ? (words[j + 1].has_digit && !words[j + 1].capitalized)
                              : words[j + 1].capitalized))
                ++j;
            std::size_t first = i;
            if (started_sentence && !digit_run) ++first;
            if (first <= j) emit(first, j);
            sentence_start = words[j].ends_sentence;
            i = j + 1;
            continue;
        }
        sentence_start = w.ends_sentence;
        ++i;
    }
    return out;
}

std::vector<std::vector<std::string>> HeuristicRecognizer::recognize(const std::vector<std::string>& texts) const {
    std::vector<std::vector<std::string>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(entities(t));
    return out;
}

}  // namespace hopsynth
