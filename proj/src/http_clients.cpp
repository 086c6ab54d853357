#include <chrono>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "hopsynth/entities.h"
#include "hopsynth/error.h"
#include "hopsynth/genbackend.h"
#include "hopsynth/retrieval.h"

namespace hopsynth {

namespace {

using nlohmann::json;

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path prefix without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
    if (url.empty()) throw InvalidArgument("http client needs an endpoint");
    const auto scheme = url.find("://");
    const auto path = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    Endpoint e{url.substr(0, path), path == std::string::npos ? std::string() : url.substr(path)};
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

// POSTs JSON with bounded retries. Connection errors and 5xx are retried;
// other statuses and unparseable bodies are not.
json post_json(const Endpoint& ep, const std::string& path, const json& body, int attempts, int backoff_ms,
               int timeout_seconds) {
    const std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt < std::max(attempts, 1); ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms << (attempt - 1)));
        httplib::Client client(ep.origin);
        client.set_connection_timeout(timeout_seconds, 0);
        client.set_read_timeout(timeout_seconds, 0);
        client.set_write_timeout(timeout_seconds, 0);
        auto res = client.Post(ep.prefix + path, payload, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw MalformedResponse(path + ": HTTP " + std::to_string(res->status) + " " + res->body.substr(0, 200));
        try {
            return json::parse(res->body);
        } catch (const json::exception& e) {
            throw MalformedResponse(path + ": response is not JSON: " + e.what());
        }
    }
    throw BackendUnavailable(ep.origin + ep.prefix + path + " unavailable after " + std::to_string(attempts) +
                             " attempts: " + last_error);
}

class HttpBackend : public CompletionBackend {
public:
    explicit HttpBackend(HttpBackendOptions options)
        : options_(std::move(options)), endpoint_(split_endpoint(options_.endpoint)),
          slots_(std::max(options_.max_in_flight, 1)) {}

    std::string generate(const PromptText& prompt, const DecodeParams& params) const override {
        json body = {{"prompt", prompt.text},
                     {"max_tokens", params.max_tokens},
                     {"temperature", params.temperature},
                     {"top_p", params.top_p},
                     {"top_k", params.top_k ? json(*params.top_k) : json(nullptr)},
                     {"stop", params.stop},
                     {"seed", params.seed ? json(*params.seed) : json(nullptr)}};
        slots_.acquire();
        json res;
        try {
            res = post_json(endpoint_, "/v1/completions", body, options_.attempts, options_.backoff_ms,
                            options_.timeout_seconds);
        } catch (...) {
            slots_.release();
            throw;
        }
        slots_.release();
        if (!res.is_object() || !res.contains("text") || !res["text"].is_string())
            throw MalformedResponse("/v1/completions: response lacks a string 'text'");
        return res["text"].get<std::string>();
    }

private:
    HttpBackendOptions options_;
    Endpoint endpoint_;
    mutable std::counting_semaphore<1024> slots_;
};

class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    HttpEmbeddingProvider(const std::string& endpoint, int timeout) : endpoint_(split_endpoint(endpoint)), timeout_(timeout) {}

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override {
        if (texts.empty()) throw InvalidArgument("embed: no texts");
        const json res = post_json(endpoint_, "/v1/embeddings", {{"texts", texts}}, 3, 200, timeout_);
        try {
            const auto& vs = res.at("vectors");
            if (!vs.is_array() || vs.size() != texts.size())
                throw MalformedResponse("/v1/embeddings: expected " + std::to_string(texts.size()) + " vectors");
            std::vector<EmbeddingVector> out;
            out.reserve(vs.size());
            for (const auto& v : vs) out.push_back({v.get<std::vector<float>>()});
            return out;
        } catch (const json::exception& e) {
            throw MalformedResponse(std::string("/v1/embeddings: ") + e.what());
        }
    }

private:
    Endpoint endpoint_;
    int timeout_;
};

class HttpRecognizer : public EntityRecognizer {
public:
    HttpRecognizer(const std::string& endpoint, int timeout) : endpoint_(split_endpoint(endpoint)), timeout_(timeout) {}

    std::vector<std::vector<std::string>> recognize(const std::vector<std::string>& texts) const override {
        const json res = post_json(endpoint_, "/v1/entities", {{"texts", texts}}, 3, 200, timeout_);
        try {
            auto out = res.at("entities").get<std::vector<std::vector<std::string>>>();
            if (out.size() != texts.size())
                throw MalformedResponse("/v1/entities: expected " + std::to_string(texts.size()) + " lists");
            return out;
        } catch (const json::exception& e) {
            throw MalformedResponse(std::string("/v1/entities: ") + e.what());
        }
    }

private:
    Endpoint endpoint_;
    int timeout_;
};

}  // namespace

std::unique_ptr<CompletionBackend> make_http_backend(const HttpBackendOptions& options) {
    if (options.max_in_flight < 1 || options.max_in_flight > 1024)
        throw InvalidArgument("max_in_flight must be in [1, 1024]");
    return std::make_unique<HttpBackend>(options);
}

std::unique_ptr<EmbeddingProvider> make_http_embedding_provider(const std::string& endpoint, int timeout_seconds) {
    return std::make_unique<HttpEmbeddingProvider>(endpoint, timeout_seconds);
}

std::unique_ptr<EntityRecognizer> make_http_recognizer(const std::string& endpoint, int timeout_seconds) {
    return std::make_unique<HttpRecognizer>(endpoint, timeout_seconds);
}

}  // namespace hopsynth
