#include <doctest.h>

#include <map>

#include "hopsynth/error.h"
#include "hopsynth/pairing.h"
#include "synthetic_corpus.h"

using namespace hopsynth;

namespace {

CorpusStore store_with_topics(std::size_t n, std::uint64_t seed) {
    CorpusConfig c;
    c.topic_labeler = std::make_shared<KeywordTopicLabeler>();
    return ingest_corpus_text(fixture::synthetic_corpus_jsonl(n, seed, 5), c);
}

Document doc(const std::string& id, const std::string& title, std::vector<Anchor> anchors = {}) {
    return {id, title, title + " text", std::move(anchors), std::nullopt};
}

}  // namespace

TEST_SUITE("pairing") {

TEST_CASE("pairs satisfy the relation invariant") {
    const auto store = store_with_topics(120, 4);
    PairingConfig pc;
    pc.rng_seed = 9;
    std::size_t hyper = 0, topic = 0;
    for (const auto& [id, d] : store.documents()) {
        const auto pairs = sample_pairs(store, id, pc);
        CHECK(pairs.size() <= 4);
        std::set<DocId> partners;
        for (const auto& p : pairs) {
            CHECK(p.d1.id == id);
            CHECK(pair_is_consistent(store, p));
            CHECK(partners.insert(p.d2.id).second);
            (p.relation == Relation::hyper ? hyper : topic) += 1;
        }
    }
    CHECK(hyper > 0);
    CHECK(topic > 0);
}

TEST_CASE("sampling is deterministic per seed") {
    const auto store = store_with_topics(60, 2);
    PairingConfig a;
    a.rng_seed = 1;
    PairingConfig b;
    b.rng_seed = 2;
    bool differs = false;
    for (const auto& [id, d] : store.documents()) {
        const auto x = sample_pairs(store, id, a);
        const auto y = sample_pairs(store, id, a);
        REQUIRE(x.size() == y.size());
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].d2.id == y[i].d2.id);
        const auto z = sample_pairs(store, id, b);
        for (std::size_t i = 0; i < std::min(x.size(), z.size()); ++i) differs = differs || x[i].d2.id != z[i].d2.id;
    }
    CHECK(differs);
}

TEST_CASE("alternation and fallback") {
    std::vector<Document> docs = {doc("a", "A", {{"B", "B"}}), doc("b", "B"), doc("c", "C"), doc("d", "D")};
    for (auto& d : docs) d.topic = "same";
    CorpusConfig c;
    c.topic_labeler = std::make_shared<KeywordTopicLabeler>();
    const auto store = CorpusStore::build(docs, c);
    const auto pairs = sample_pairs(store, "a", PairingConfig{});
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].relation == Relation::hyper);
    CHECK(pairs[0].d2.id == "b");
    CHECK(pairs[1].relation == Relation::topic);
    CHECK(pairs[2].relation == Relation::topic);

    PairingConfig one;
    one.pairs_per_document = 1;
    CHECK(sample_pairs(store, "a", one).size() == 1);
    PairingConfig none;
    none.pairs_per_document = 0;
    CHECK(sample_pairs(store, "a", none).empty());
}

TEST_CASE("topic candidates") {
    DocumentPair p{doc("a", "Alpha"), doc("b", "Beta"), Relation::topic};
    const auto c = answer_candidates(p, {"ignored"});
    REQUIRE(c.size() == 4);
    CHECK(c[0] == AnswerCandidate{"Alpha", AnswerSource::title});
    CHECK(c[1] == AnswerCandidate{"Beta", AnswerSource::title});
    CHECK(c[2] == AnswerCandidate{"yes", AnswerSource::yes});
    CHECK(c[3] == AnswerCandidate{"no", AnswerSource::no});
}

TEST_CASE("hyper candidates merge entities and anchors") {
    DocumentPair p{doc("a", "Alpha", {{"Beta", "Beta"}, {"Gamma", "Gamma"}}), doc("b", "Beta", {{"Alpha", "Alpha"}}),
                   Relation::hyper};
    const auto c = answer_candidates(p, {"Gamma", "Delta", "Gamma"});
    REQUIRE(c.size() == 4);
    CHECK(c[0] == AnswerCandidate{"Gamma", AnswerSource::entity});
    CHECK(c[1] == AnswerCandidate{"Delta", AnswerSource::entity});
    CHECK(c[2] == AnswerCandidate{"Beta", AnswerSource::anchor_text});
    CHECK(c[3] == AnswerCandidate{"Alpha", AnswerSource::anchor_text});

    DocumentPair bare{doc("a", "Alpha"), doc("b", "Beta"), Relation::hyper};
    CHECK_THROWS_AS(answer_candidates(bare, {}), NoCandidates);
}

TEST_CASE("uniform pick over topic candidates") {
    DocumentPair p{doc("a", "Alpha"), doc("b", "Beta"), Relation::topic};
    const auto c = answer_candidates(p, {});
    Rng rng(2024);
    std::map<std::string, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[pick_answer(c, rng).text];
    REQUIRE(counts.size() == 4);
    for (const auto& [text, n] : counts) {
        INFO(text);
        CHECK(std::abs(static_cast<double>(n) / draws - 0.25) <= 0.02);
    }
    CHECK_THROWS_AS(pick_answer({}, rng), InvalidArgument);
}

TEST_CASE("relation names") {
    CHECK(parse_relation(to_string(Relation::topic)) == Relation::topic);
    CHECK(parse_answer_source(to_string(AnswerSource::anchor_text)) == AnswerSource::anchor_text);
    CHECK_THROWS_AS(parse_relation("both"), InvalidArgument);
}

}
