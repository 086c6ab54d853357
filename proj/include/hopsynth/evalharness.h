#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopsynth/corpus.h"
#include "hopsynth/genbackend.h"
#include "hopsynth/retrieval.h"
#include "hopsynth/synthesis.h"

namespace hopsynth {

struct EvalConfig {
    int max_hops = 2;
    int k = 7;
    int self_consistency_samples = 20;
    bool self_consistency = false;
    TaskFamily task = TaskFamily::mqa;
};

enum class HaltReason { answered, hop_limit, empty_completion, backend_error };
std::string_view to_string(HaltReason r);

struct Turn {
    std::string query;
    std::vector<DocId> retrieved_ids;
};

struct Transcript {
    std::string question;
    std::vector<Turn> turns;
    std::optional<std::string> final_answer;  // also set by the forced answer after hop_limit
    HaltReason halted_reason = HaltReason::answered;
    std::vector<std::string> completions;
    std::string error;  // backend_error only
};

// Context in the training layout: the question line, then per hop a "Query:"
// line followed by "Document:" lines. `force_answer` appends the "Answer:" cue.
std::string render_episode_context(const std::string& question, const std::vector<Turn>& turns,
                                   const CorpusStore& store, TaskFamily task, bool force_answer);

Transcript run_episode(const std::string& question, const CompletionBackend& backend, const FlatIndex& index,
                       const EmbeddingProvider& provider, const CorpusStore& store, const EvalConfig& config,
                       const DecodeParams& params);

// Mean EM and F1, both as percentages.
std::pair<double, double> score_qa(const std::vector<std::string>& predictions, const std::vector<std::string>& golds);

// Trimmed, upper-cased, whitespace-collapsed label; throws InvalidArgument
// when it is not one of the three fever labels.
std::string normalize_fever_label(std::string_view label);
double score_fever(const std::vector<std::string>& predictions, const std::vector<std::string>& golds);

// Majority over normalize_answer classes; earliest class wins ties and the
// first surface form represents the class.
std::string self_consistency(const std::vector<std::string>& answers);

struct DatasetScore {
    bool is_accuracy = false;
    double em = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;

    static DatasetScore qa(double em, double f1) { return {false, em, f1, 0.0}; }
    static DatasetScore acc(double a) { return {true, 0.0, 0.0, a}; }
};

double aggregate_average(const std::vector<DatasetScore>& per_dataset);

struct EvalItem {
    std::string id;
    std::string question;
    std::string gold;  // "answer", or "label" for fever
};

std::vector<EvalItem> load_eval_items(const std::filesystem::path& path, TaskFamily task);

struct EvalItemResult {
    std::string id;
    std::string prediction;
    std::string gold;
    Transcript transcript;  // greedy run, or the first sample
};

struct EvalReport {
    TaskFamily task = TaskFamily::mqa;
    double em = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    std::vector<EvalItemResult> items;

    nlohmann::ordered_json to_json() const;
};

// Greedy episodes, or self_consistency_samples seeded episodes per item voted
// with self_consistency().
EvalReport evaluate(const std::vector<EvalItem>& items, const CompletionBackend& backend, const FlatIndex& index,
                    const EmbeddingProvider& provider, const CorpusStore& store, const EvalConfig& config,
                    std::uint64_t seed, int workers);

}  // namespace hopsynth
