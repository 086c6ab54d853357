#include "hopsynth/cli.h"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hopsynth/config.h"
#include "hopsynth/emitter.h"
#include "hopsynth/error.h"
#include "hopsynth/evalharness.h"
#include "hopsynth/pipeline.h"

namespace hopsynth {

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string task;
    std::string backend;
    std::string embeddings;
    std::string examples;
    std::string in;
    std::string out;
    std::optional<int> k;
    std::optional<std::size_t> dev_size;
    std::string tuples;
    std::string corpus;
    std::string report;
    bool json = false;
    bool self_consistency = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "Configuration file (key = value lines)");
    cmd->add_option("--seed", f.seed, "Seed for all randomness");
    cmd->add_option("--workers", f.workers, "Parallel workers (default: all cores)");
    cmd->add_option("--task", f.task, "mqa or fever")->check(CLI::IsMember({"mqa", "fever"}));
    cmd->add_option("--backend", f.backend, "Completion backend")->check(CLI::IsMember({"http", "mock"}));
    cmd->add_option("--embeddings", f.embeddings, "Embedding provider")->check(CLI::IsMember({"http", "file", "mock"}));
    cmd->add_option("--examples", f.examples, "Few-shot examples file or directory");
    cmd->add_option("--corpus", f.corpus, "Corpus JSONL (overrides corpus.path)");
}

AppConfig resolve(const Flags& f) {
    AppConfig c = f.config.empty() ? AppConfig{} : load_config(f.config);
    if (f.seed) c.seed = *f.seed;
    if (f.workers) c.workers = *f.workers;
    if (!f.task.empty()) c.task = parse_task_family(f.task);
    if (!f.backend.empty()) c.backend_kind = f.backend;
    if (!f.embeddings.empty()) c.embeddings_kind = f.embeddings;
    if (!f.examples.empty()) c.examples_path = f.examples;
    if (!f.corpus.empty()) c.corpus_path = f.corpus;
    if (!f.tuples.empty()) c.tuples_path = f.tuples;
    if (f.dev_size) c.dev_size = *f.dev_size;
    if (f.k) {
        if (*f.k < 1) throw InvalidArgument("--k must be >= 1");
        c.verify.k = *f.k;
        c.eval.k = *f.k;
    }
    if (f.self_consistency) c.eval.self_consistency = true;
    return c;
}

PipelineSettings settings_of(const AppConfig& c) {
    PipelineSettings s;
    s.task = c.task;
    s.seed = c.seed;
    s.workers = c.effective_workers();
    s.pairing.pairs_per_document = c.pairs_per_document;
    s.pairing.rng_seed = c.seed;
    s.filter = c.filter;
    s.verify = c.verify;
    return s;
}

CorpusStore load_store(const AppConfig& c) {
    if (c.corpus_path.empty()) throw InvalidArgument("no corpus given (use --corpus or corpus.path)");
    return ingest_corpus(c.corpus_path, c.corpus_config());
}

void need(const std::string& value, const char* flag) {
    if (value.empty()) throw InvalidArgument(std::string("missing required flag ") + flag);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

void emit_report(const Flags& f, const PipelineReport& report, std::ostream& err) {
    const std::string text = report.to_json().dump(2) + "\n";
    if (!f.report.empty()) write_text(f.report, text);
    err << text;
    for (const auto& w : report.warnings()) err << "warning: " << w << "\n";
}

// Owns the service objects a synthesis stage needs.
struct Services {
    std::unique_ptr<CompletionBackend> backend;
    std::unique_ptr<EntityRecognizer> recognizer;
    std::unique_ptr<EmbeddingProvider> embedder;
    ExampleSet examples;

    explicit Services(const AppConfig& c)
        : backend(make_backend(c)), recognizer(make_recognizer(c)), embedder(make_embedding_provider(c)),
          examples(make_examples(c)) {}

    PipelineServices view() const { return {*backend, *recognizer, *embedder, examples}; }
};

int run(const std::string& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
    const AppConfig c = resolve(f);

    if (cmd == "ingest") {
        need(f.in, "--in");
        need(f.out, "--out");
        IngestReport rep;
        const CorpusStore store = ingest_corpus(f.in, c.corpus_config(), &rep);
        write_corpus(store, f.out);
        err << "documents " << rep.documents << ", dangling anchors " << rep.dangling_anchors
            << ", anchors past truncation " << rep.truncated_anchors << "\n";
        return 0;
    }
    if (cmd == "stats") {
        need(f.in, "--in");
        const auto data = read_jsonl(f.in);
        const StatsReport r = dataset_stats(data, f.dev_size.value_or(0));
        out << (f.json ? stats_to_json(r).dump(2) + "\n" : format_stats(r));
        return 0;
    }
    if (cmd == "emit") {
        need(f.in, "--in");
        need(f.out, "--out");
        const auto data = read_jsonl(f.in);
        const auto [train, dev] = split_dev(data, c.dev_size, c.seed);
        std::filesystem::create_directories(f.out);
        write_jsonl(train, std::filesystem::path(f.out) / "train.jsonl");
        write_jsonl(dev, std::filesystem::path(f.out) / "dev.jsonl");
        err << "train " << train.size() << ", dev " << dev.size() << "\n";
        return 0;
    }

    const CorpusStore store = load_store(c);
    const PipelineSettings settings = settings_of(c);
    PipelineReport report;

    if (cmd == "pair") {
        need(f.out, "--out");
        const auto rec = make_recognizer(c);
        write_stage_file(make_tuples(store, settings, *rec, report), f.out);
        emit_report(f, report, err);
        return 0;
    }

    const Services services(c);
    const PipelineServices view = services.view();

    if (cmd == "gen-questions" || cmd == "filter-answers" || cmd == "gen-queries") {
        need(f.in, "--in");
        need(f.out, "--out");
        const auto in = read_stage_file(f.in);
        std::vector<StageRecord> result;
        if (cmd == "gen-questions") result = stage_questions(in, store, view, settings, report);
        else if (cmd == "filter-answers") result = stage_answers(in, store, view, settings, report);
        else result = stage_queries(in, store, view, settings);
        write_stage_file(result, f.out);
        emit_report(f, report, err);
        return 0;
    }

    const FlatIndex index = index_corpus(store, *services.embedder);

    if (cmd == "verify") {
        need(f.in, "--in");
        need(f.out, "--out");
        write_jsonl(stage_verify(read_stage_file(f.in), store, index, view, settings, report), f.out);
        emit_report(f, report, err);
        return 0;
    }
    if (cmd == "run-all") {
        need(f.out, "--out");
        const auto tuples = c.tuples_path.empty() ? make_tuples(store, settings, *services.recognizer, report)
                                                  : load_tuples(c.tuples_path, store, settings);
        if (!c.tuples_path.empty()) report.documents = store.size();
        write_jsonl(run_pipeline(tuples, store, index, view, settings, report), f.out);
        emit_report(f, report, err);
        return report.conserved() ? 0 : 2;
    }
    if (cmd == "eval") {
        need(f.in, "--in");
        EvalConfig ec = c.eval;
        ec.task = c.task;
        const EvalReport r = evaluate(load_eval_items(f.in, c.task), *services.backend, index, *services.embedder,
                                      store, ec, c.seed, settings.workers);
        const std::string text = r.to_json().dump(2) + "\n";
        if (!f.out.empty()) write_text(f.out, text);
        if (c.task == TaskFamily::fever)
            out << "accuracy " << r.accuracy << "\n";
        else
            out << "em " << r.em << "\nf1 " << r.f1 << "\n";
        return 0;
    }
    throw InvalidArgument("unknown command " + cmd);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-hop QA and claim-verification data synthesis", "hopsynth"};
    app.require_subcommand(1);
    Flags f;

    struct Spec {
        const char* name;
        const char* help;
        bool in, out, tuples, report, k, dev, json, sc;
    };
    const Spec specs[] = {
        {"ingest", "Normalize a corpus file", true, true, false, false, false, false, false, false},
        {"pair", "Sample document pairs and answers", false, true, false, true, false, false, false, false},
        {"gen-questions", "Generate questions or claims and apply the entity filter", true, true, false, true, false,
         false, false, false},
        {"filter-answers", "Answerability filter and hop classification", true, true, false, true, false, false, false,
         false},
        {"gen-queries", "Generate candidate retrieval queries", true, true, false, true, false, false, false, false},
        {"verify", "Verify queries and assemble instances", true, true, false, true, true, false, false, false},
        {"emit", "Split a dataset into train and dev files", true, true, false, false, false, true, false, false},
        {"stats", "Print dataset statistics", true, false, false, false, false, true, true, false},
        {"eval", "Run the iterative retrieval evaluation", true, true, false, false, true, false, false, true},
        {"run-all", "Run every synthesis stage", false, true, true, true, true, false, false, false},
    };
    for (const auto& s : specs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, f);
        if (s.in) cmd->add_option("--in", f.in, "Input file");
        if (s.out) cmd->add_option("--out", f.out, "Output path");
        if (s.tuples) cmd->add_option("--tuples", f.tuples, "Prepared (pair, answer) tuples instead of sampling");
        if (s.report) cmd->add_option("--report", f.report, "Write drop counters as JSON");
        if (s.k) cmd->add_option("--k", f.k, "Documents retrieved per query");
        if (s.dev) cmd->add_option("--dev-size", f.dev_size, "Dev set size");
        if (s.json) cmd->add_flag("--json", f.json, "JSON output");
        if (s.sc) cmd->add_flag("--self-consistency", f.self_consistency, "Vote over sampled episodes");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, f, out, err);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hopsynth
