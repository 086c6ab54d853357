#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hopsynth/promptkit.h"

namespace hopsynth {

// Exactly one sampling family is active: greedy (temperature 0), top-k
// (top_k set, temperature > 0) or nucleus (top_p in (0, 1]).
struct DecodeParams {
    int max_tokens = 64;
    double top_p = 1.0;
    double temperature = 1.0;
    std::optional<int> top_k;
    std::vector<std::string> stop;
    std::optional<std::uint64_t> seed;

    void validate() const;
    bool operator==(const DecodeParams&) const = default;
};

enum class DecodeStage { question_gen, answering, query_gen, eval_greedy, eval_self_consistency };

DecodeParams default_decode_params(DecodeStage stage);

class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    // Raw continuation of the prompt; stop handling happens in complete().
    virtual std::string generate(const PromptText& prompt, const DecodeParams& params) const = 0;
};

// Cuts `text` at the earliest occurrence of any stop sequence.
std::string trim_at_stop(std::string_view text, const std::vector<std::string>& stops);

// Runs the backend and trims at the union of the prompt's and the params'
// stop sequences. Throws EmptyCompletion when nothing is left.
std::string complete(const CompletionBackend& backend, const PromptText& prompt, const DecodeParams& params);

// Hex FNV-1a of the prompt text; the key of mock tables.
std::string prompt_hash(std::string_view prompt_text);

// Pure function of (prompt text, seed): either a lookup table keyed by
// prompt_hash or a rule program.
class MockBackend : public CompletionBackend {
public:
    using Program = std::function<std::string(const PromptText&, std::optional<std::uint64_t> seed)>;

    explicit MockBackend(std::unordered_map<std::string, std::string> table);
    explicit MockBackend(Program program);

    std::string generate(const PromptText& prompt, const DecodeParams& params) const override;

    // Table file: JSONL of {"prompt_hash": s, "completion": s} or {"prompt": s, "completion": s}.
    static MockBackend from_table_file(const std::string& path);

private:
    std::unordered_map<std::string, std::string> table_;
    Program program_;
};

struct HttpBackendOptions {
    std::string endpoint;  // e.g. http://127.0.0.1:8000
    int max_in_flight = 8;
    int attempts = 3;
    int backoff_ms = 200;  // doubled after each failed attempt
    int timeout_seconds = 120;
};

// POST {endpoint}/v1/completions with the decode parameters as-is.
std::unique_ptr<CompletionBackend> make_http_backend(const HttpBackendOptions& options);

// Built-in rule programs for the mock backend.
//
// "fewshot" answers every synthesis prompt built from the shipped few-shot
// examples the way the examples themselves do; anything else gets an empty
// or non-committal completion.
MockBackend::Program fewshot_mock_program();

// "synthetic" produces seeded, noisy completions for documents whose text
// starts with "<Title> is ...". Used for pipeline sweeps.
MockBackend::Program synthetic_mock_program();

}  // namespace hopsynth
