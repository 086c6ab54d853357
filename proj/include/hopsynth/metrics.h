#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hopsynth {

// Pipeline tokenizer. Word characters (ASCII alphanumerics and any non-ASCII
// byte) form runs; every other non-space character is a token of its own, so
// "1,800" yields "1", ",", "800". Case is preserved.
std::vector<std::string> tokenize(std::string_view text);

// Byte offsets [begin, end) of each token produced by tokenize().
struct TokenSpan {
    std::size_t begin;
    std::size_t end;
};
std::vector<TokenSpan> token_spans(std::string_view text);

// Whitespace-only split, used for the word counts in dataset statistics.
std::vector<std::string> split_whitespace(std::string_view text);

// SQuAD-style normalization: lowercase, drop ASCII punctuation, drop the
// articles a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view text);

struct ScorePair {
    bool em = false;
    double f1 = 0.0;
};

// Multiset token-overlap F1 over normalized strings. Both empty scores 1,
// exactly one empty scores 0.
double token_f1(std::string_view pred, std::string_view gold);

bool exact_match(std::string_view pred, std::string_view gold);

ScorePair score_pair(std::string_view pred, std::string_view gold);

}  // namespace hopsynth
