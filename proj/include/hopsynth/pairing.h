#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopsynth/corpus.h"
#include "hopsynth/rng.h"

namespace hopsynth {

enum class Relation { hyper, topic };

std::string_view to_string(Relation r);
Relation parse_relation(std::string_view s);

struct DocumentPair {
    Document d1;  // anchor document
    Document d2;  // sampled partner
    Relation relation = Relation::hyper;
};

enum class AnswerSource { entity, anchor_text, title, yes, no };

std::string_view to_string(AnswerSource s);
AnswerSource parse_answer_source(std::string_view s);

struct AnswerCandidate {
    std::string text;
    AnswerSource source = AnswerSource::entity;

    bool operator==(const AnswerCandidate&) const = default;
};

struct PairingConfig {
    int pairs_per_document = 4;
    std::uint64_t rng_seed = 0;
};

// Up to pairs_per_document pairs anchored at `id`. Partners alternate between
// hyperlink neighbors and same-topic documents (hyper first) and never repeat.
std::vector<DocumentPair> sample_pairs(const CorpusStore& store, const DocId& id, const PairingConfig& config);

// Checks the relation invariant of a pair against the store.
bool pair_is_consistent(const CorpusStore& store, const DocumentPair& pair);

// hyper: entities then anchor spans of d1 and d2, deduplicated in that order.
// topic: [d1.title, d2.title, "yes", "no"]. Throws NoCandidates for an empty
// hyper set.
std::vector<AnswerCandidate> answer_candidates(const DocumentPair& pair, const std::vector<std::string>& entities);

AnswerCandidate pick_answer(const std::vector<AnswerCandidate>& candidates, Rng& rng);

}  // namespace hopsynth
