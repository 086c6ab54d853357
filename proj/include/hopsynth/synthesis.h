#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopsynth/entities.h"
#include "hopsynth/genbackend.h"
#include "hopsynth/pairing.h"
#include "hopsynth/promptkit.h"

namespace hopsynth {

enum class TaskFamily { mqa, fever };

std::string_view to_string(TaskFamily t);
TaskFamily parse_task_family(std::string_view s);

TaskKind question_task(TaskFamily t);
TaskKind answer_task(TaskFamily t);
TaskKind query_task(TaskFamily t);

// The three fever labels, in sampling order.
const std::vector<std::string>& fever_labels();

// Few-shot examples per setting for one task family.
struct ExampleSet {
    std::vector<FewShotExample> hyper;
    std::vector<FewShotExample> topic;  // empty for fever

    const std::vector<FewShotExample>& for_relation(Relation r) const { return r == Relation::hyper ? hyper : topic; }

    static ExampleSet builtin(TaskFamily task);
    // A directory holds mqa_hyper.jsonl / mqa_topic.jsonl or fever.jsonl; a
    // single file is used for every setting.
    static ExampleSet load(const std::filesystem::path& path, TaskFamily task);
};

struct FilterConfig {
    double f1_threshold = 0.70;  // strict
    int min_entities_hyper = 1;
    int min_entities_topic = 2;
};

struct QuestionDraft {
    std::string id;
    DocumentPair pair;
    TaskFamily task = TaskFamily::mqa;
    std::string text;
    std::string prepared_answer;
};

enum class Verdict { drop, keep };
enum class HopCount { one, two };

struct AnswerableIn {
    bool both = false;
    bool first = false;
    bool second = false;

    bool operator==(const AnswerableIn&) const = default;
};

struct HopDecision {
    Verdict verdict = Verdict::drop;
    HopCount hops = HopCount::two;
    AnswerableIn answerable_in;
    std::string final_answer;

    bool operator==(const HopDecision&) const = default;
};

enum class QueryOrigin { model, original_question_backup };

struct QueryCandidate {
    std::string text;
    QueryOrigin origin = QueryOrigin::model;
    int generation_rank = 0;

    bool operator==(const QueryCandidate&) const = default;
};

// What every generation step needs. Seeds for individual calls are derived
// from (seed, instance id, stage) so results do not depend on scheduling.
struct SynthesisContext {
    const CompletionBackend& backend;
    TaskFamily task;
    const ExampleSet& examples;
    std::uint64_t seed = 0;
};

// Returns nullopt when the completion is empty. MQA questions are repaired to
// end with "?". Throws InvalidArgument for fever on a topic pair.
std::optional<QuestionDraft> generate_question(const std::string& id, const DocumentPair& pair,
                                               const std::string& answer, const SynthesisContext& ctx);

// Recognizer failures count as zero entities; the message lands in *warning.
bool entity_count_filter(const QuestionDraft& draft, const EntityRecognizer& recognizer, const FilterConfig& config,
                         std::string* warning = nullptr);

// Prediction over exactly `docs` (one or two); "" for an empty completion.
// `stream` distinguishes the both/first/second calls of one instance.
std::string answer_question(const std::string& question, const std::vector<Document>& docs, Relation setting,
                            const SynthesisContext& ctx, const std::string& id, std::string_view stream);

// token_f1 > threshold for mqa; exact label equality for fever.
bool decide_answerable(std::string_view pred, std::string_view prepared, const FilterConfig& config, TaskFamily task);

HopDecision classify_hops(const QuestionDraft& draft, const std::string& pred_both, const std::string& pred_first,
                          const std::string& pred_second, const FilterConfig& config);

// Model candidates (at most 4, ranks 0..n-1) followed by the backup candidate
// holding the question itself.
std::vector<QueryCandidate> generate_queries(const std::string& id, const DocumentPair& pair,
                                             const std::string& question, const std::string& answer,
                                             const SynthesisContext& ctx);

// Extracts model queries from a raw query-generation completion.
std::vector<std::string> parse_query_lines(std::string_view completion, std::size_t cap = 4);

}  // namespace hopsynth
