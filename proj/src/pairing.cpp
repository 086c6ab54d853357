#include "hopsynth/pairing.h"

#include <algorithm>
#include <set>

#include "hopsynth/error.h"

namespace hopsynth {

std::string_view to_string(Relation r) { return r == Relation::hyper ? "hyper" : "topic"; }

Relation parse_relation(std::string_view s) {
    if (s == "hyper") return Relation::hyper;
    if (s == "topic") return Relation::topic;
    throw InvalidArgument("unknown relation '" + std::string(s) + "'");
}

std::string_view to_string(AnswerSource s) {
    switch (s) {
        case AnswerSource::entity: return "entity";
        case AnswerSource::anchor_text: return "anchor_text";
        case AnswerSource::title: return "title";
        case AnswerSource::yes: return "yes";
        case AnswerSource::no: return "no";
    }
    return "entity";
}

AnswerSource parse_answer_source(std::string_view s) {
    if (s == "entity") return AnswerSource::entity;
    if (s == "anchor_text") return AnswerSource::anchor_text;
    if (s == "title") return AnswerSource::title;
    if (s == "yes") return AnswerSource::yes;
    if (s == "no") return AnswerSource::no;
    throw InvalidArgument("unknown answer source '" + std::string(s) + "'");
}

std::vector<DocumentPair> sample_pairs(const CorpusStore& store, const DocId& id, const PairingConfig& config) {
    const Document& anchor = store.at(id);
    Rng rng(derive_seed(config.rng_seed, id, "pairs"));

    std::vector<DocId> hyper = hyperlink_neighbors(store, id);
    rng.shuffle(hyper);

    std::vector<DocId> topic;
    if (auto label = store.topic_of(id)) {
        const std::set<DocId> linked(hyper.begin(), hyper.end());
        for (const auto& other : store.topic_clusters().at(*label))
            if (other != id && !linked.count(other)) topic.push_back(other);
        rng.shuffle(topic);
    }

    std::vector<DocumentPair> pairs;
    const auto want = static_cast<std::size_t>(std::max(config.pairs_per_document, 0));
    std::size_t hi = 0, ti = 0;
    bool take_hyper = true;
    while (pairs.size() < want && (hi < hyper.size() || ti < topic.size())) {
        const bool use_hyper = hi < hyper.size() && (take_hyper || ti >= topic.size());
        if (use_hyper)
            pairs.push_back({anchor, store.at(hyper[hi++]), Relation::hyper});
        else
            pairs.push_back({anchor, store.at(topic[ti++]), Relation::topic});
        take_hyper = !use_hyper;
    }
    return pairs;
}

bool pair_is_consistent(const CorpusStore& store, const DocumentPair& pair) {
    if (pair.d1.id == pair.d2.id || !store.contains(pair.d1.id) || !store.contains(pair.d2.id)) return false;
    if (pair.relation == Relation::hyper) {
        const auto n = hyperlink_neighbors(store, pair.d1.id);
        return std::binary_search(n.begin(), n.end(), pair.d2.id);
    }
    const auto a = store.topic_of(pair.d1.id);
    const auto b = store.topic_of(pair.d2.id);
    return a && b && *a == *b;
}

std::vector<AnswerCandidate> answer_candidates(const DocumentPair& pair, const std::vector<std::string>& entities) {
    if (pair.relation == Relation::topic) {
        return {{pair.d1.title, AnswerSource::title},
                {pair.d2.title, AnswerSource::title},
                {"yes", AnswerSource::yes},
                {"no", AnswerSource::no}};
    }
    std::vector<AnswerCandidate> out;
    std::set<std::string> seen;
    for (const auto& e : entities)
        if (!e.empty() && seen.insert(e).second) out.push_back({e, AnswerSource::entity});
    for (const Document* d : {&pair.d1, &pair.d2})
        for (const auto& a : d->anchors)
            if (!a.span.empty() && seen.insert(a.span).second) out.push_back({a.span, AnswerSource::anchor_text});
    if (out.empty())
        throw NoCandidates("no answer candidates for pair (" + pair.d1.id + ", " + pair.d2.id + ")");
    return out;
}

AnswerCandidate pick_answer(const std::vector<AnswerCandidate>& candidates, Rng& rng) {
    if (candidates.empty()) throw InvalidArgument("pick_answer: empty candidate list");
    return candidates[rng.below(candidates.size())];
}

}  // namespace hopsynth
