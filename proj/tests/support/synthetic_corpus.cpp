#include "synthetic_corpus.h"

#include <set>
#include <vector>

#include <json.hpp>

#include "hopsynth/rng.h"

namespace fixture {

namespace {

const char* const kOnsets[] = {"B", "D", "F", "G", "K", "L", "M", "N", "P", "R", "S", "T", "V", "Z"};
const char* const kVowels[] = {"a", "e", "i", "o", "u"};
const char* const kCodas[] = {"", "n", "r", "l", "s", "th"};
const char* const kNouns[] = {"river", "village", "poet", "festival", "album", "mountain", "ship", "company"};

std::string word(hopsynth::Rng& rng) {
    std::string w;
    const std::size_t syllables = 2 + rng.below(2);
    for (std::size_t s = 0; s < syllables; ++s) {
        std::string onset = kOnsets[rng.below(std::size(kOnsets))];
        if (s > 0) onset[0] = static_cast<char>(onset[0] - 'A' + 'a');
        w += onset;
        w += kVowels[rng.below(std::size(kVowels))];
        w += kCodas[rng.below(std::size(kCodas))];
    }
    return w;
}

}  // namespace

std::string synthetic_corpus_jsonl(std::size_t n, std::uint64_t seed, std::size_t topics) {
    hopsynth::Rng rng(hopsynth::derive_seed(seed, "synthetic-corpus"));
    std::vector<std::string> titles;
    std::set<std::string> used;
    while (titles.size() < n) {
        std::string t = word(rng) + " " + word(rng);
        if (used.insert(t).second) titles.push_back(t);
    }
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& a = titles[(i + 1 + rng.below(n - 1)) % n];
        const std::string& b = titles[(i + 1 + rng.below(n - 1)) % n];
        const std::string year = std::to_string(1800 + rng.below(220));
        const std::string noun = kNouns[rng.below(std::size(kNouns))];
        const std::string text = titles[i] + " is a " + noun + " first recorded in " + year + " near " + a +
                                 ". Its best known neighbour is " + b + ", and locals call it " + word(rng) + ".";
        nlohmann::ordered_json anchors = nlohmann::ordered_json::array();
        if (a != titles[i]) anchors.push_back({{"span", a}, {"target", a}});
        if (b != titles[i] && b != a) anchors.push_back({{"span", b}, {"target", b}});
        char id[32];
        std::snprintf(id, sizeof id, "s%04zu", i);
        nlohmann::ordered_json j{{"id", id},
                                 {"title", titles[i]},
                                 {"text", text},
                                 {"anchors", anchors},
                                 {"topic", "t" + std::to_string(i % topics)}};
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace fixture
