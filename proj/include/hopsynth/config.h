#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "hopsynth/corpus.h"
#include "hopsynth/entities.h"
#include "hopsynth/evalharness.h"
#include "hopsynth/genbackend.h"
#include "hopsynth/pairing.h"
#include "hopsynth/retrieval.h"
#include "hopsynth/synthesis.h"
#include "hopsynth/verification.h"

namespace hopsynth {

// Everything the CLI can configure. File keys use dotted names, e.g.
// "filter.f1_threshold"; see apply_setting for the full list.
struct AppConfig {
    std::string corpus_path;
    int max_doc_tokens = 100;
    DanglingLinkPolicy dangling_link_policy = DanglingLinkPolicy::drop;
    bool topics = true;
    std::string topic_keywords;  // "label:kw1,kw2;label2:kw3"

    int pairs_per_document = 4;
    std::string tuples_path;

    FilterConfig filter;
    VerifyConfig verify;
    EvalConfig eval;

    std::string backend_kind = "mock";  // mock | http
    std::string backend_endpoint;
    std::string backend_mock = "fewshot";  // fewshot | synthetic | table
    std::string backend_mock_table;
    int backend_max_in_flight = 8;
    int backend_attempts = 3;
    int backend_backoff_ms = 200;
    int backend_timeout = 120;

    std::string embeddings_kind = "mock";  // mock | file | http
    std::string embeddings_endpoint;
    std::string embeddings_file;
    int embeddings_dim = 256;

    std::string entities_kind = "heuristic";  // heuristic | http
    std::string entities_endpoint;

    TaskFamily task = TaskFamily::mqa;
    std::uint64_t seed = 0;
    int workers = 0;  // 0: all cores
    std::size_t dev_size = 5000;
    std::string examples_path;

    CorpusConfig corpus_config() const;
    int effective_workers() const;
};

// Flat "key = value" lines; '#' starts a comment. Throws ParseError with the
// line number for malformed lines and InvalidArgument for unknown keys.
std::map<std::string, std::string> parse_config_text(std::string_view text);

void apply_setting(AppConfig& config, const std::string& key, const std::string& value);

AppConfig load_config(const std::filesystem::path& path);
AppConfig config_from_text(std::string_view text);

std::unique_ptr<CompletionBackend> make_backend(const AppConfig& config);
std::unique_ptr<EmbeddingProvider> make_embedding_provider(const AppConfig& config);
std::unique_ptr<EntityRecognizer> make_recognizer(const AppConfig& config);
ExampleSet make_examples(const AppConfig& config);

}  // namespace hopsynth
