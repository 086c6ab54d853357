#include <doctest.h>

#include <set>

#include "helpers.h"
#include "hopsynth/emitter.h"
#include "hopsynth/error.h"
#include "hopsynth/records.h"

using namespace hopsynth;

namespace {

DataInstance instance(const std::string& id, int hops, TaskFamily task = TaskFamily::mqa) {
    DataInstance i;
    i.id = id;
    i.task = task;
    i.relation = Relation::hyper;
    i.question = "Which film did he voice?";
    i.answer = task == TaskFamily::fever ? "NOT ENOUGH INFO" : "Turner Pictures";
    i.source_pair = {"a" + id, "b" + id};
    for (int h = 0; h < hops; ++h) i.hops.push_back({"query number " + std::to_string(h), {"a" + id, "x"}});
    return i;
}

}  // namespace

TEST_SUITE("emitter") {

TEST_CASE("instance json has a fixed field order") {
    const auto j = to_json(instance("7", 2));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"id", "task", "relation", "question", "answer", "hops", "source_pair",
                                           "n_hops"});
    CHECK(j["n_hops"] == 2);
    CHECK(j["hops"][0]["retrieved"] == nlohmann::json::array({"a7", "x"}));
    CHECK(j["source_pair"] == nlohmann::json::array({"a7", "b7"}));
    CHECK(instance_from_json(nlohmann::json::parse(j.dump())) == instance("7", 2));

    auto bad = nlohmann::json::parse(j.dump());
    bad["n_hops"] = 1;
    CHECK_THROWS(instance_from_json(bad));
}

TEST_CASE("jsonl round trip") {
    std::vector<DataInstance> v = {instance("1", 1), instance("2", 2), instance("3", 1, TaskFamily::fever)};
    v[0].question = "Ünïcode \"quoted\"\tquestion?";
    const auto dir = testing::temp_dir("emitter");
    CHECK(write_jsonl(v, dir / "d.jsonl") == 3);
    CHECK(read_jsonl(dir / "d.jsonl") == v);
    CHECK(testing::slurp(dir / "d.jsonl") == dataset_to_jsonl(v));
    CHECK(dataset_to_jsonl({}).empty());
    testing::spit(dir / "bad.jsonl", dataset_to_jsonl(v) + "{\"id\": 3}\n");
    try {
        read_jsonl(dir / "bad.jsonl");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("stage records round trip") {
    StageRecord r;
    r.id = "d1#0";
    r.task = TaskFamily::mqa;
    r.relation = Relation::topic;
    r.d1 = "d1";
    r.d2 = "d2";
    r.answer = "yes";
    r.answer_source = AnswerSource::yes;
    const auto dir = testing::temp_dir("stage");
    std::vector<StageRecord> rs = {r};
    r.id = "d1#1";
    r.question = "Are both rivers?";
    r.pred_both = "yes";
    r.pred_first = "unknown";
    r.pred_second = "";
    r.decision = HopDecision{Verdict::keep, HopCount::two, {true, false, false}, "yes"};
    r.candidates = std::vector<QueryCandidate>{{"river a", QueryOrigin::model, 0},
                                               {"Are both rivers?", QueryOrigin::original_question_backup, 1}};
    rs.push_back(r);
    write_stage_file(rs, dir / "s.jsonl");
    CHECK(read_stage_file(dir / "s.jsonl") == rs);
    CHECK(stage_record_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
    testing::spit(dir / "bad.jsonl", to_jsonl_line(to_json(rs[0])) + "[1]\n");
    CHECK_THROWS_AS(read_stage_file(dir / "bad.jsonl"), ParseError);
}

TEST_CASE("dev split") {
    std::vector<DataInstance> v;
    for (int i = 0; i < 50; ++i) v.push_back(instance(std::to_string(i), 1 + i % 2));
    const auto [train, dev] = split_dev(v, 10, 3);
    CHECK(train.size() == 40);
    CHECK(dev.size() == 10);
    std::set<std::string> ids;
    for (const auto* part : {&train, &dev}) {
        for (std::size_t i = 1; i < part->size(); ++i) CHECK(std::stoi((*part)[i - 1].id) < std::stoi((*part)[i].id));
        for (const auto& x : *part) ids.insert(x.id);
    }
    CHECK(ids.size() == 50);
    CHECK(split_dev(v, 10, 3) == std::make_pair(train, dev));
    CHECK(split_dev(v, 10, 4).second != dev);
    CHECK(split_dev(v, 0, 3).first == v);
    CHECK_THROWS_AS(split_dev(v, 51, 3), InvalidArgument);
}

TEST_CASE("stats against hand counts") {
    // Question: 5 words, queries: 3 words each, answer: 2 words.
    std::vector<DataInstance> v = {instance("1", 1), instance("2", 2), instance("3", 2), instance("4", 2)};
    const auto s = dataset_stats(v, 1);
    CHECK(s.train_size == 3);
    CHECK(s.dev_size == 1);
    CHECK(s.count_single == 1);
    CHECK(s.count_two == 3);
    CHECK(s.percent_single == 25.0);
    CHECK(s.percent_two == 75.0);
    CHECK(*s.avg_question_words == 5.0);
    CHECK(*s.avg_query_words == 3.0);
    CHECK(*s.avg_answer_words == 2.0);
    CHECK_FALSE(s.fever);

    const auto text = format_stats(s);
    CHECK(text ==
          "Size of Train Set             3\n"
          "Size of Dev Set               1\n"
          "#SQ Data                      1 (25.00%)\n"
          "#TQ Data                      3 (75.00%)\n"
          "Avg. words per question       5.00\n"
          "Avg. words per query          3.00\n"
          "Avg. words per answer         2.00\n");
    const auto j = stats_to_json(s);
    CHECK(j["sq_percent"] == 25.0);
    CHECK(j["avg_answer_words"] == 2.0);
}

TEST_CASE("fever stats omit the answer length") {
    const auto s = dataset_stats({instance("1", 1, TaskFamily::fever), instance("2", 2, TaskFamily::fever)});
    CHECK(s.fever);
    CHECK_FALSE(s.avg_answer_words);
    CHECK(format_stats(s).find("answer") == std::string::npos);
    CHECK(format_stats(s).find("Avg. words per claim") != std::string::npos);
    CHECK_FALSE(stats_to_json(s).contains("avg_answer_words"));

    const auto empty = dataset_stats({});
    CHECK(empty.train_size == 0);
    CHECK_FALSE(empty.avg_question_words);
    CHECK(format_stats(empty).find("n/a") != std::string::npos);
    CHECK_THROWS_AS(dataset_stats({instance("1", 1)}, 2), InvalidArgument);
}

}
