#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "fewshot_fixture.h"
#include "helpers.h"
#include "hopsynth/cli.h"
#include "hopsynth/config.h"
#include "hopsynth/emitter.h"
#include "hopsynth/error.h"
#include "hopsynth/records.h"

using namespace hopsynth;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "hopsynth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path fewshot_dir(const std::string& name, TaskFamily task) {
    const auto dir = testing::temp_dir(name);
    fixture::write_fewshot_fixture(fixture::build_fewshot_fixture(task), dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 1") {
    CHECK(call({}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    const auto r = call({"run-all", "--task", "trivia"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error:", 0) == 0);
    CHECK(call({"run-all"}).code == 1);
    CHECK(call({"stats"}).code == 1);
    CHECK(call({"verify", "--k", "x"}).code == 1);
}

TEST_CASE("help exits 0") {
    const auto r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("run-all") != std::string::npos);
}

TEST_CASE("runtime failures exit 2") {
    CHECK(call({"stats", "--in", "/nonexistent/data.jsonl"}).code == 2);
    CHECK(call({"run-all", "--corpus", "/nonexistent/c.jsonl", "--out", "/tmp/x.jsonl"}).code == 2);
}

TEST_CASE("run-all on the few-shot fixture is reproducible") {
    const auto dir = fewshot_dir("cli_runall", TaskFamily::mqa);
    const auto conf = (dir / "run.conf").string();
    const auto a = call({"run-all", "--config", conf, "--out", (dir / "a.jsonl").string(), "--report",
                         (dir / "report.json").string()});
    REQUIRE(a.code == 0);
    const auto b = call({"run-all", "--config", conf, "--workers", "1", "--out", (dir / "b.jsonl").string()});
    REQUIRE(b.code == 0);
    const auto data = testing::slurp(dir / "a.jsonl");
    CHECK(data == testing::slurp(dir / "b.jsonl"));
    CHECK(read_jsonl(dir / "a.jsonl").size() == 8);
    const auto report = nlohmann::json::parse(testing::slurp(dir / "report.json"));
    CHECK(report["emitted"] == 8);
    CHECK(report["drafts_in"] == 8);

    // Stage by stage gives the same dataset.
    auto stage = [&](const std::string& cmd, const std::string& in, const std::string& out) {
        return call({cmd, "--config", conf, "--in", (dir / in).string(), "--out", (dir / out).string()}).code;
    };
    CHECK(stage("gen-questions", "tuples.jsonl", "q.jsonl") == 0);
    CHECK(stage("filter-answers", "q.jsonl", "f.jsonl") == 0);
    CHECK(stage("gen-queries", "f.jsonl", "g.jsonl") == 0);
    CHECK(stage("verify", "g.jsonl", "v.jsonl") == 0);
    CHECK(testing::slurp(dir / "v.jsonl") == data);
}

TEST_CASE("stats and emit") {
    const auto dir = fewshot_dir("cli_stats", TaskFamily::fever);
    const auto conf = (dir / "run.conf").string();
    REQUIRE(call({"run-all", "--config", conf, "--out", (dir / "d.jsonl").string()}).code == 0);
    const auto s = call({"stats", "--in", (dir / "d.jsonl").string(), "--dev-size", "2"});
    CHECK(s.code == 0);
    CHECK(s.out.find("Size of Train Set             6\n") != std::string::npos);
    CHECK(s.out.find("Avg. words per claim") != std::string::npos);
    CHECK(s.out.find("answer") == std::string::npos);
    const auto j = call({"stats", "--in", (dir / "d.jsonl").string(), "--json"});
    CHECK(nlohmann::json::parse(j.out)["sq_count"] == 6);

    CHECK(call({"emit", "--in", (dir / "d.jsonl").string(), "--out", (dir / "split").string(), "--dev-size", "3"})
              .code == 0);
    CHECK(read_jsonl(dir / "split" / "train.jsonl").size() == 5);
    CHECK(read_jsonl(dir / "split" / "dev.jsonl").size() == 3);
    CHECK(call({"emit", "--in", (dir / "d.jsonl").string(), "--out", (dir / "split").string()}).code == 1);
}

TEST_CASE("pair and ingest") {
    const auto dir = fewshot_dir("cli_pair", TaskFamily::mqa);
    const auto conf = (dir / "run.conf").string();
    CHECK(call({"ingest", "--config", conf, "--in", (dir / "corpus.jsonl").string(), "--out",
                (dir / "norm.jsonl").string()})
              .code == 0);
    const auto r = call({"pair", "--config", conf, "--seed", "3", "--out", (dir / "pairs.jsonl").string()});
    CHECK(r.code == 0);
    const auto recs = read_stage_file(dir / "pairs.jsonl");
    CHECK_FALSE(recs.empty());
    CHECK(nlohmann::json::parse(r.err.substr(0, r.err.find("\n}") + 2))["documents"] == 16);
}

TEST_CASE("eval writes a report") {
    const auto dir = fewshot_dir("cli_eval", TaskFamily::mqa);
    testing::spit(dir / "items.jsonl", "{\"id\": \"1\", \"question\": \"Who?\", \"answer\": \"x\"}\n");
    const auto r = call({"eval", "--config", (dir / "run.conf").string(), "--embeddings", "mock", "--in",
                         (dir / "items.jsonl").string(), "--out", (dir / "eval.json").string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("em ", 0) == 0);
    CHECK(nlohmann::json::parse(testing::slurp(dir / "eval.json"))["items"].size() == 1);
}

TEST_CASE("config files") {
    const auto c = config_from_text("# comment\nfilter.f1_threshold = 0.5\nseed = 12 # trailing\ntask = fever\n");
    CHECK(c.filter.f1_threshold == 0.5);
    CHECK(c.seed == 12);
    CHECK(c.task == TaskFamily::fever);
    CHECK_THROWS_AS(config_from_text("nonsense line"), ParseError);
    CHECK_THROWS_AS(config_from_text("no.such.key = 1"), InvalidArgument);
    CHECK_THROWS_AS(config_from_text("verify.k = 0"), InvalidArgument);
    CHECK_THROWS_AS(config_from_text("eval.max_hops = two"), InvalidArgument);
}

TEST_CASE("the installed binary behaves like dispatch") {
    const auto dir = fewshot_dir("cli_binary", TaskFamily::mqa);
    const std::string cmd = std::string(HOPSYNTH_CLI) + " run-all --config " + (dir / "run.conf").string() +
                            " --out " + (dir / "bin.jsonl").string() + " 2> " + (dir / "log.txt").string();
    CHECK(std::system(cmd.c_str()) == 0);
    REQUIRE(call({"run-all", "--config", (dir / "run.conf").string(), "--out", (dir / "lib.jsonl").string()}).code ==
            0);
    CHECK(testing::slurp(dir / "bin.jsonl") == testing::slurp(dir / "lib.jsonl"));
    CHECK(std::system((std::string(HOPSYNTH_CLI) + " bogus > /dev/null 2>&1").c_str()) != 0);
}

}
