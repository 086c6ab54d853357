#include "fewshot_fixture.h"

#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "hopsynth/promptkit.h"
#include "hopsynth/records.h"

namespace fixture {

using hopsynth::Relation;
using hopsynth::TaskFamily;
using nlohmann::ordered_json;

namespace {

struct PairSpec {
    const char* title1;
    const char* title2;
    const char* anchor;  // span in doc 1 linking to doc 2; null for topic pairs
    // Gold document of each query: 0 for doc 1, 1 for doc 2.
    std::vector<int> gold;
};

// Same order as the shipped example files.
const std::vector<PairSpec>& mqa_topic_specs() {
    static const std::vector<PairSpec> k = {
        {"The Border Surrender", "Unsane", nullptr, {0, 1}},
        {"Adam Clayton Powell", "The Saimaa Gesture", nullptr, {0, 1}},
        {"Pavel Urysohn", "Leonid Levin", nullptr, {0, 1}},
        {"Steven Spielberg", "Martin Campbell", nullptr, {0, 1}},
    };
    return k;
}

const std::vector<PairSpec>& mqa_hyper_specs() {
    static const std::vector<PairSpec> k = {
        {"Colorado orogeny", "High Plains", "High Plains", {0, 1}},
        {"Avidathe Pole Ivideyum", "M. K. Arjunan", "M. K. Arjunan", {0, 1}},
        {"1997–98 Indiana Pacers season", "1997–98 NBA season", "1997–98 NBA season", {0}},
        {"The Pagemaster", "Frank Welker", "Frank Welker", {1, 0}},
    };
    return k;
}

const std::vector<PairSpec>& fever_specs() {
    static const std::vector<PairSpec> k = {
        {"Peggy Sue Got Married", "Francis Ford Coppola", "Francis Ford Coppola", {0}},
        {"Stranger Things", "Indiana", "Indiana", {0}},
        {"Fort Sumter", "Sea fort", "sea fort", {0}},
        {"Rod Serling", "The Twilight Zone", "The Twilight Zone", {0}},
        {"Liverpool F.C.", "Bill Shankly", "Bill Shankly", {0}},
        {"Nikolaj Coster-Waldau", "Fox Broadcasting Company", "Fox", {0, 1}},
        {"X-Men: Days of Future Past", "X-Men", "X-Men", {0}},
        {"All My Children", "Agnes Nixon", "Agnes Nixon", {0, 1}},
    };
    return k;
}

std::vector<float> one_hot(std::size_t dim, std::size_t i) {
    std::vector<float> v(dim, 0.0f);
    v[i] = 1.0f;
    return v;
}

std::string line(const ordered_json& j) { return j.dump() + "\n"; }

}  // namespace

hopsynth::CorpusConfig fewshot_corpus_config() {
    hopsynth::CorpusConfig c;
    c.max_doc_tokens = 400;
    c.topic_labeler = std::make_shared<hopsynth::KeywordTopicLabeler>();
    return c;
}

FewShotFixture build_fewshot_fixture(TaskFamily task) {
    struct Group {
        std::vector<hopsynth::FewShotExample> examples;
        const std::vector<PairSpec>* specs;
        Relation relation;
        const char* prefix;
    };
    std::vector<Group> groups;
    if (task == TaskFamily::mqa) {
        groups.push_back({hopsynth::builtin_examples(hopsynth::TaskKind::mqa_question_gen, Relation::topic),
                          &mqa_topic_specs(), Relation::topic, "topic"});
        groups.push_back({hopsynth::builtin_examples(hopsynth::TaskKind::mqa_question_gen, Relation::hyper),
                          &mqa_hyper_specs(), Relation::hyper, "hyper"});
    } else {
        groups.push_back({hopsynth::builtin_examples(hopsynth::TaskKind::fever_verify, Relation::hyper), &fever_specs(),
                          Relation::hyper, "fever"});
    }

    std::size_t n_docs = 0;
    for (const auto& g : groups) n_docs += 2 * g.examples.size();

    FewShotFixture f;
    f.task = task;
    std::map<std::string, std::vector<float>> vectors;
    auto pin = [&](const std::string& text, std::vector<float> v) {
        auto [it, inserted] = vectors.emplace(text, v);
        if (!inserted && it->second != v) throw std::logic_error("conflicting pinned embedding for '" + text + "'");
    };

    std::size_t doc_index = 0;
    for (const auto& g : groups) {
        if (g.examples.size() != g.specs->size()) throw std::logic_error("fixture spec count mismatch");
        for (std::size_t e = 0; e < g.examples.size(); ++e) {
            const auto& ex = g.examples[e];
            const auto& spec = (*g.specs)[e];
            const std::size_t i1 = doc_index++, i2 = doc_index++;
            char id1[16], id2[16];
            std::snprintf(id1, sizeof id1, "doc%02zu", i1);
            std::snprintf(id2, sizeof id2, "doc%02zu", i2);
            const std::string topic1 = std::string(g.prefix) + "-" + std::to_string(e) + (g.relation == Relation::topic ? "" : "a");
            const std::string topic2 = std::string(g.prefix) + "-" + std::to_string(e) + (g.relation == Relation::topic ? "" : "b");

            ordered_json d1{{"id", id1}, {"title", spec.title1}, {"text", ex.documents[0]}, {"anchors", ordered_json::array()}, {"topic", topic1}};
            ordered_json d2{{"id", id2}, {"title", spec.title2}, {"text", ex.documents[1]}, {"anchors", ordered_json::array()}, {"topic", topic2}};
            if (spec.anchor) d1["anchors"].push_back({{"span", spec.anchor}, {"target", spec.title2}});
            f.corpus_jsonl += line(d1) + line(d2);

            const std::string tuple_id = std::string(g.prefix) + "-" + std::to_string(e);
            hopsynth::StageRecord t;
            t.id = tuple_id;
            t.task = task;
            t.relation = g.relation;
            t.d1 = id1;
            t.d2 = id2;
            t.answer = ex.answer;
            if (task == TaskFamily::fever) t.answer_source = hopsynth::AnswerSource::entity;
            else if (g.relation == Relation::topic)
                t.answer_source = ex.answer == "yes"  ? hopsynth::AnswerSource::yes
                                  : ex.answer == "no" ? hopsynth::AnswerSource::no
                                                      : hopsynth::AnswerSource::title;
            else t.answer_source = hopsynth::AnswerSource::anchor_text;
            f.tuples_jsonl += hopsynth::to_jsonl_line(hopsynth::to_json(t));

            pin(ex.documents[0], one_hot(n_docs, i1));
            pin(ex.documents[1], one_hot(n_docs, i2));
            std::vector<float> both(n_docs, 0.0f);
            both[i1] = both[i2] = 1.0f;
            pin(ex.question_or_claim, both);
            if (spec.gold.size() != ex.queries.size()) throw std::logic_error("gold map does not match queries");
            for (std::size_t q = 0; q < ex.queries.size(); ++q) {
                std::vector<float> v(n_docs, 0.0f);
                const std::size_t gold = spec.gold[q] == 0 ? i1 : i2;
                const std::size_t other = spec.gold[q] == 0 ? i2 : i1;
                v[gold] = 1.0f;
                v[other] = -1.0f;
                pin(ex.queries[q], v);
            }
            f.expected.push_back({tuple_id, ex.question_or_claim, ex.answer, static_cast<int>(ex.queries.size()), id1,
                                  id2, g.relation});
        }
    }
    for (const auto& [text, v] : vectors) f.embeddings_jsonl += line(ordered_json{{"text", text}, {"vector", v}});
    return f;
}

std::filesystem::path write_fewshot_fixture(const FewShotFixture& f, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto put = [&](const char* name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
        if (!out) throw std::runtime_error("cannot write fixture file");
    };
    put("corpus.jsonl", f.corpus_jsonl);
    put("tuples.jsonl", f.tuples_jsonl);
    put("embeddings.jsonl", f.embeddings_jsonl);
    put("run.conf",
        "# few-shot replay\n"
        "corpus.path = corpus.jsonl\n"
        "corpus.max_doc_tokens = 400\n"
        "pairing.tuples_path = tuples.jsonl\n"
        "backend.kind = mock\n"
        "backend.mock = fewshot\n"
        "embeddings.kind = file\n"
        "embeddings.file = embeddings.jsonl\n"
        "task = " + std::string(hopsynth::to_string(f.task)) + "\n"
        "verify.k = 7\n"
        "workers = 2\n");
    return dir / "run.conf";
}

}  // namespace fixture
