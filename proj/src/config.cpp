#include "hopsynth/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hopsynth/error.h"
#include "hopsynth/parallel.h"
#include "text_util.h"

namespace hopsynth {

CorpusConfig AppConfig::corpus_config() const {
    CorpusConfig c;
    c.max_doc_tokens = max_doc_tokens;
    c.dangling_link_policy = dangling_link_policy;
    if (topics) c.topic_labeler = std::make_shared<KeywordTopicLabeler>(KeywordTopicLabeler::parse_buckets(topic_keywords));
    return c;
}

int AppConfig::effective_workers() const { return workers > 0 ? workers : default_workers(); }

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t lineno = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
            const std::string key(text::trim(line.substr(0, eq)));
            if (key.empty()) throw ParseError("empty key", lineno);
            out[key] = std::string(text::trim(line.substr(eq + 1)));
        }
        if (end == text.size()) break;
    }
    return out;
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* b = value.data();
    const auto* e = value.data() + value.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) throw InvalidArgument("invalid value for " + key + ": '" + value + "'");
    return out;
}

int parse_positive(const std::string& key, const std::string& value) {
    const int v = parse_number<int>(key, value);
    if (v < 1) throw InvalidArgument(key + " must be >= 1");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "off" || value == "0" || value == "no") return false;
    throw InvalidArgument("invalid boolean for " + key + ": '" + value + "'");
}

std::string one_of(const std::string& key, const std::string& value, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (value == a) return value;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
    throw InvalidArgument("invalid value for " + key + ": '" + value + "' (expected " + list + ")");
}

}  // namespace

void apply_setting(AppConfig& c, const std::string& key, const std::string& v) {
    if (key == "corpus.path") c.corpus_path = v;
    else if (key == "corpus.max_doc_tokens") c.max_doc_tokens = parse_positive(key, v);
    else if (key == "corpus.dangling_link_policy")
        c.dangling_link_policy = one_of(key, v, {"drop", "keep_unresolved"}) == "drop" ? DanglingLinkPolicy::drop
                                                                                         : DanglingLinkPolicy::keep_unresolved;
    else if (key == "corpus.topics") c.topics = parse_bool(key, v);
    else if (key == "corpus.topic_keywords") c.topic_keywords = v;
    else if (key == "pairing.pairs_per_document") c.pairs_per_document = parse_positive(key, v);
    else if (key == "pairing.tuples_path") c.tuples_path = v;
    else if (key == "filter.f1_threshold") {
        c.filter.f1_threshold = parse_number<double>(key, v);
        if (c.filter.f1_threshold < 0.0 || c.filter.f1_threshold > 1.0) throw InvalidArgument(key + " must be in [0, 1]");
    } else if (key == "filter.min_entities_hyper") c.filter.min_entities_hyper = parse_number<int>(key, v);
    else if (key == "filter.min_entities_topic") c.filter.min_entities_topic = parse_number<int>(key, v);
    else if (key == "verify.k") c.verify.k = parse_positive(key, v);
    else if (key == "eval.max_hops") c.eval.max_hops = parse_positive(key, v);
    else if (key == "eval.k") c.eval.k = parse_positive(key, v);
    else if (key == "eval.self_consistency_samples") c.eval.self_consistency_samples = parse_positive(key, v);
    else if (key == "eval.self_consistency") c.eval.self_consistency = parse_bool(key, v);
    else if (key == "backend.kind") c.backend_kind = one_of(key, v, {"mock", "http"});
    else if (key == "backend.endpoint") c.backend_endpoint = v;
    else if (key == "backend.mock") c.backend_mock = one_of(key, v, {"fewshot", "synthetic", "table"});
    else if (key == "backend.mock_table") c.backend_mock_table = v;
    else if (key == "backend.max_in_flight") c.backend_max_in_flight = parse_positive(key, v);
    else if (key == "backend.attempts") c.backend_attempts = parse_positive(key, v);
    else if (key == "backend.backoff_ms") c.backend_backoff_ms = parse_number<int>(key, v);
    else if (key == "backend.timeout") c.backend_timeout = parse_positive(key, v);
    else if (key == "embeddings.kind") c.embeddings_kind = one_of(key, v, {"mock", "file", "http"});
    else if (key == "embeddings.endpoint") c.embeddings_endpoint = v;
    else if (key == "embeddings.file") c.embeddings_file = v;
    else if (key == "embeddings.dim") c.embeddings_dim = parse_positive(key, v);
    else if (key == "entities.kind") c.entities_kind = one_of(key, v, {"heuristic", "http"});
    else if (key == "entities.endpoint") c.entities_endpoint = v;
    else if (key == "task") c.task = parse_task_family(v);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "workers") c.workers = parse_number<int>(key, v);
    else if (key == "dev_size") c.dev_size = parse_number<std::size_t>(key, v);
    else if (key == "examples.path") c.examples_path = v;
    else throw InvalidArgument("unknown config key '" + key + "'");
}

AppConfig config_from_text(std::string_view text) {
    AppConfig c;
    for (const auto& [k, v] : parse_config_text(text)) apply_setting(c, k, v);
    return c;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    AppConfig c = config_from_text(ss.str());
    // Relative paths in the file are relative to the file itself.
    const auto base = path.parent_path();
    for (std::string* p : {&c.corpus_path, &c.tuples_path, &c.backend_mock_table, &c.embeddings_file, &c.examples_path})
        if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).string();
    return c;
}

std::unique_ptr<CompletionBackend> make_backend(const AppConfig& c) {
    if (c.backend_kind == "http") {
        HttpBackendOptions o;
        o.endpoint = c.backend_endpoint;
        o.max_in_flight = c.backend_max_in_flight;
        o.attempts = c.backend_attempts;
        o.backoff_ms = c.backend_backoff_ms;
        o.timeout_seconds = c.backend_timeout;
        if (o.endpoint.empty()) throw InvalidArgument("backend.kind = http needs backend.endpoint");
        return make_http_backend(o);
    }
    if (c.backend_mock == "table") {
        if (c.backend_mock_table.empty()) throw InvalidArgument("backend.mock = table needs backend.mock_table");
        return std::make_unique<MockBackend>(MockBackend::from_table_file(c.backend_mock_table));
    }
    if (c.backend_mock == "synthetic") return std::make_unique<MockBackend>(synthetic_mock_program());
    return std::make_unique<MockBackend>(fewshot_mock_program());
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const AppConfig& c) {
    if (c.embeddings_kind == "http") {
        if (c.embeddings_endpoint.empty()) throw InvalidArgument("embeddings.kind = http needs embeddings.endpoint");
        return make_http_embedding_provider(c.embeddings_endpoint);
    }
    if (c.embeddings_kind == "file") {
        if (c.embeddings_file.empty()) throw InvalidArgument("embeddings.kind = file needs embeddings.file");
        return std::make_unique<FileEmbeddingProvider>(FileEmbeddingProvider::load(c.embeddings_file));
    }
    return std::make_unique<HashEmbeddingProvider>(static_cast<std::size_t>(c.embeddings_dim));
}

std::unique_ptr<EntityRecognizer> make_recognizer(const AppConfig& c) {
    if (c.entities_kind == "http") {
        if (c.entities_endpoint.empty()) throw InvalidArgument("entities.kind = http needs entities.endpoint");
        return make_http_recognizer(c.entities_endpoint);
    }
    return std::make_unique<HeuristicRecognizer>();
}

ExampleSet make_examples(const AppConfig& c) {
    return c.examples_path.empty() ? ExampleSet::builtin(c.task) : ExampleSet::load(c.examples_path, c.task);
}

}  // namespace hopsynth
