#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopsynth/pairing.h"

namespace hopsynth {

enum class TaskKind { mqa_question_gen, mqa_answer, mqa_query_gen, fever_claim_gen, fever_verify, fever_query_gen };

std::string_view to_string(TaskKind t);
bool is_fever(TaskKind t);

// Throws InvalidArgument for fever tasks combined with the topic setting.
void check_task_setting(TaskKind task, Relation setting);

struct FewShotExample {
    std::array<std::string, 2> documents;
    std::string question_or_claim;
    std::string answer;
    std::vector<std::string> queries;  // at most two

    bool operator==(const FewShotExample&) const = default;
};

struct PromptText {
    std::string text;
    std::vector<std::string> stop_sequences;
};

// Stop sequences attached to every synthesis prompt.
const std::vector<std::string>& synthesis_stop_sequences();

// The shipped few-shot examples: four per MQA setting, eight shared by the
// fever tasks.
std::vector<FewShotExample> builtin_examples(TaskKind task, Relation setting);

// Few-shot store in JSONL: {"documents": [s, s], "question": s, "answer": s, "queries": [s]}.
std::vector<FewShotExample> load_examples(const std::filesystem::path& path);
std::string examples_to_jsonl(const std::vector<FewShotExample>& examples);

struct PromptTarget {
    std::vector<std::string> documents;  // one or two
    std::optional<std::string> question;
    std::optional<std::string> answer;
};

// Renders the example blocks followed by the target block, which stops at the
// cue for the expected completion. Newlines inside fields become spaces.
PromptText render_prompt(TaskKind task, Relation setting, std::span<const FewShotExample> examples,
                         const PromptTarget& target);

PromptText render_prompt(TaskKind task, Relation setting, std::span<const FewShotExample> examples,
                         const DocumentPair& pair, const std::optional<std::string>& answer,
                         const std::optional<std::string>& question);

struct ParsedPrompt {
    std::vector<FewShotExample> examples;
    PromptTarget target;
};

// Inverse of render_prompt for newline-free fields.
ParsedPrompt parse_prompt(TaskKind task, std::string_view text);

// Label used for the question field: "Question" or "Claim".
std::string_view question_label(TaskKind task);

// The cue the target block ends with.
std::string_view cue_of(TaskKind task);

}  // namespace hopsynth
