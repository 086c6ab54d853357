#include <doctest.h>

#include <map>
#include <mutex>

#include "helpers.h"
#include "hopsynth/error.h"
#include "hopsynth/evalharness.h"

using namespace hopsynth;

namespace {

struct World {
    CorpusStore store;
    HashEmbeddingProvider provider{64};
    FlatIndex index;

    World() {
        std::vector<Document> docs;
        for (int i = 0; i < 12; ++i) {
            const std::string id = "e" + std::to_string(i);
            docs.push_back({id, "Title" + std::to_string(i), "Entry " + std::to_string(i) + " about topic" +
                                                                  std::to_string(i) + " and more text.",
                            {}, std::nullopt});
        }
        store = CorpusStore::build(docs, CorpusConfig{});
        index = index_corpus(store, provider);
    }
};

// Backend driven by a function of (number of queries so far, question, seed).
struct Scripted : CompletionBackend {
    std::function<std::string(int, const std::string&, std::optional<std::uint64_t>)> fn;
    mutable std::mutex mu;
    mutable std::vector<std::string> prompts;

    std::string generate(const PromptText& prompt, const DecodeParams& p) const override {
        {
            std::lock_guard<std::mutex> lock(mu);
            prompts.push_back(prompt.text);
        }
        int queries = 0;
        for (std::size_t pos = 0; (pos = prompt.text.find("\nQuery: ", pos)) != std::string::npos; ++pos) ++queries;
        const auto nl = prompt.text.find('\n');
        const std::string first = prompt.text.substr(0, nl);
        const std::string question = first.substr(first.find(": ") + 2);
        return fn(queries, question, p.seed);
    }
};

}  // namespace

TEST_SUITE("evalharness") {

TEST_CASE("episode context layout") {
    World w;
    const std::vector<Turn> turns = {{"topic3", {"e3", "e1"}}};
    CHECK(render_episode_context("Who?", turns, w.store, TaskFamily::mqa, false) ==
          "Question: Who?\nQuery: topic3\nDocument: Entry 3 about topic3 and more text.\n"
          "Document: Entry 1 about topic1 and more text.\n");
    CHECK(render_episode_context("C", {}, w.store, TaskFamily::fever, true) == "Claim: C\nAnswer:");
}

TEST_CASE("query then answer") {
    World w;
    Scripted b;
    b.fn = [](int q, const std::string&, std::optional<std::uint64_t>) {
        return q == 0 ? std::string("Query: topic5\nignored") : std::string("Answer: Title5");
    };
    EvalConfig cfg;
    cfg.k = 3;
    const auto tr = run_episode("Which?", b, w.index, w.provider, w.store, cfg, default_decode_params(DecodeStage::eval_greedy));
    CHECK(tr.halted_reason == HaltReason::answered);
    CHECK(tr.final_answer == "Title5");
    REQUIRE(tr.turns.size() == 1);
    CHECK(tr.turns[0].query == "topic5");
    CHECK(tr.turns[0].retrieved_ids.size() == 3);
    CHECK(tr.turns[0].retrieved_ids[0] == "e5");
    CHECK(tr.completions == std::vector<std::string>{"Query: topic5", "Answer: Title5"});
    CHECK(b.prompts[1].find("Document: Entry 5") != std::string::npos);
}

TEST_CASE("hop limit forces an answer") {
    World w;
    Scripted b;
    b.fn = [](int q, const std::string&, std::optional<std::uint64_t>) {
        return "Query: topic" + std::to_string(q);
    };
    EvalConfig cfg;
    const auto tr = run_episode("Which?", b, w.index, w.provider, w.store, cfg, default_decode_params(DecodeStage::eval_greedy));
    CHECK(tr.turns.size() == 2);
    CHECK(tr.halted_reason == HaltReason::hop_limit);
    REQUIRE(b.prompts.size() == 3);
    CHECK(b.prompts[2].substr(b.prompts[2].size() - 8) == "\nAnswer:");
    // The forced completion is taken as the answer.
    CHECK(tr.final_answer == "Query: topic2");
}

TEST_CASE("empty completions and failures halt") {
    World w;
    Scripted b;
    b.fn = [](int, const std::string&, std::optional<std::uint64_t>) { return std::string("\nrest"); };
    EvalConfig cfg;
    auto tr = run_episode("Q", b, w.index, w.provider, w.store, cfg, default_decode_params(DecodeStage::eval_greedy));
    CHECK(tr.halted_reason == HaltReason::empty_completion);
    CHECK_FALSE(tr.final_answer);

    b.fn = [](int, const std::string&, std::optional<std::uint64_t>) -> std::string { throw BackendUnavailable("x"); };
    tr = run_episode("Q", b, w.index, w.provider, w.store, cfg, default_decode_params(DecodeStage::eval_greedy));
    CHECK(tr.halted_reason == HaltReason::backend_error);
    CHECK(tr.error == "x");

    b.fn = [](int, const std::string&, std::optional<std::uint64_t>) { return std::string("Query:"); };
    tr = run_episode("Q", b, w.index, w.provider, w.store, cfg, default_decode_params(DecodeStage::eval_greedy));
    CHECK(tr.halted_reason == HaltReason::empty_completion);

    cfg.max_hops = 0;
    CHECK_THROWS_AS(run_episode("Q", b, w.index, w.provider, w.store, cfg, DecodeParams{}), InvalidArgument);
}

TEST_CASE("qa and fever scoring") {
    const auto [em, f1] = score_qa({"Boston Celtics", "Celtics", "x"}, {"boston celtics", "Boston Celtics", "y"});
    CHECK(em == doctest::Approx(100.0 / 3));
    CHECK(f1 == doctest::Approx((100.0 + 100.0 * 2 / 3) / 3));
    CHECK(score_qa({}, {}) == std::pair<double, double>{0.0, 0.0});
    CHECK_THROWS_AS(score_qa({"a"}, {}), InvalidArgument);

    CHECK(normalize_fever_label(" not  enough info ") == "NOT ENOUGH INFO");
    CHECK_THROWS_AS(normalize_fever_label("maybe"), InvalidArgument);
    CHECK(score_fever({"supports", "REFUTES", "NOT ENOUGH INFO", "SUPPORTS"},
                      {"SUPPORTS", "SUPPORTS", "NOT ENOUGH INFO", "REFUTES"}) == 50.0);
}

TEST_CASE("self consistency vote") {
    CHECK(self_consistency({"a", "b", "The b", "c"}) == "b");
    CHECK(self_consistency({"x", "y"}) == "x");
    CHECK(self_consistency({"y", "x", "x", "y"}) == "y");
    CHECK_THROWS_AS(self_consistency({}), InvalidArgument);
}

TEST_CASE("aggregate average") {
    CHECK(aggregate_average({DatasetScore::qa(40, 60), DatasetScore::acc(80)}) == 65.0);
    CHECK(aggregate_average({DatasetScore::acc(70)}) == 70.0);
    CHECK_THROWS_AS(aggregate_average({}), InvalidArgument);
}

TEST_CASE("greedy evaluation of a scripted model") {
    World w;
    std::vector<EvalItem> items;
    std::map<std::string, std::string> gold;
    for (int i = 0; i < 20; ++i) {
        const std::string q = "Question " + std::to_string(i) + "?";
        items.push_back({"q" + std::to_string(i), q, "Answer " + std::to_string(i)});
        gold[q] = "Answer " + std::to_string(i);
    }
    Scripted b;
    b.fn = [&](int q, const std::string& question, std::optional<std::uint64_t>) {
        return q == 0 ? "Query: " + question : "Answer: " + gold.at(question);
    };
    EvalConfig cfg;
    const auto report = evaluate(items, b, w.index, w.provider, w.store, cfg, 1, 3);
    CHECK(report.em == 100.0);
    CHECK(report.f1 == 100.0);
    REQUIRE(report.items.size() == 20);
    CHECK(report.items[7].prediction == "Answer 7");
    CHECK(report.items[7].transcript.turns.size() == 1);
    const auto j = report.to_json();
    CHECK(j["items"][0]["halted_reason"] == "answered");
    CHECK_FALSE(j.contains("accuracy"));
}

TEST_CASE("self consistency evaluation recovers the majority") {
    World w;
    const std::uint64_t seed = 42;
    const std::vector<EvalItem> items = {{"a", "First?", "right"}, {"b", "Second?", "right"}};
    // Sample s of each item answers right when s < 12.
    std::map<std::uint64_t, int> sample_of;
    for (const auto& it : items)
        for (int s = 0; s < 20; ++s)
            sample_of[derive_seed(derive_seed(seed, it.id, "sample-" + std::to_string(s)), "0", "turn")] = s;
    Scripted b;
    b.fn = [&](int, const std::string&, std::optional<std::uint64_t> sd) {
        const int s = sample_of.at(sd.value());
        return s < 12 ? std::string("Answer: right") : "Answer: wrong " + std::to_string(s % 2);
    };
    EvalConfig cfg;
    cfg.self_consistency = true;
    const auto report = evaluate(items, b, w.index, w.provider, w.store, cfg, seed, 2);
    CHECK(report.em == 100.0);
    CHECK(b.prompts.size() == 40);
}

TEST_CASE("fever evaluation") {
    World w;
    Scripted b;
    b.fn = [](int, const std::string& claim, std::optional<std::uint64_t>) {
        return claim == "c1" ? std::string("Answer: supports") : std::string("Answer: banana");
    };
    EvalConfig cfg;
    cfg.task = TaskFamily::fever;
    const auto report = evaluate({{"1", "c1", "SUPPORTS"}, {"2", "c2", "REFUTES"}}, b, w.index, w.provider, w.store,
                                 cfg, 0, 1);
    CHECK(report.accuracy == 50.0);
    CHECK(report.to_json()["items"][1]["correct"] == false);
}

TEST_CASE("eval item files") {
    const auto dir = testing::temp_dir("evalitems");
    testing::spit(dir / "qa.jsonl", "{\"id\": \"1\", \"question\": \"Q?\", \"answer\": \"A\"}\n\n");
    const auto qa = load_eval_items(dir / "qa.jsonl", TaskFamily::mqa);
    REQUIRE(qa.size() == 1);
    CHECK(qa[0].gold == "A");
    testing::spit(dir / "f.jsonl", "{\"id\": \"1\", \"claim\": \"C\", \"label\": \"refutes\"}\n");
    CHECK(load_eval_items(dir / "f.jsonl", TaskFamily::fever)[0].gold == "REFUTES");
    testing::spit(dir / "bad.jsonl", "{\"id\": \"1\", \"claim\": \"C\", \"label\": \"perhaps\"}\n");
    CHECK_THROWS_AS(load_eval_items(dir / "bad.jsonl", TaskFamily::fever), ParseError);
    CHECK_THROWS_AS(load_eval_items(dir / "none.jsonl", TaskFamily::mqa), IoError);
}

}
