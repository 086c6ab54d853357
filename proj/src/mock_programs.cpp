#include <algorithm>

#include "hopsynth/error.h"
#include "hopsynth/genbackend.h"
#include "hopsynth/metrics.h"
#include "hopsynth/rng.h"
#include "text_util.h"

namespace hopsynth {

namespace {

// Recovers the task from the target block: its cue and whether the block
// carries a "Claim:" line.
TaskKind detect_task(std::string_view prompt) {
    const auto last_nl = prompt.rfind('\n');
    std::string_view cue = prompt.substr(last_nl == std::string_view::npos ? 0 : last_nl + 1);
    if (!cue.empty() && cue.back() == ':') cue.remove_suffix(1);
    const auto block_start = prompt.rfind("\n\n");
    const std::string_view block =
        block_start == std::string_view::npos ? prompt : prompt.substr(block_start + 2);
    const bool fever = block.find("\nClaim: ") != std::string_view::npos || block.rfind("Claim: ", 0) == 0;
    if (cue == "Question") return TaskKind::mqa_question_gen;
    if (cue == "Claim") return TaskKind::fever_claim_gen;
    if (cue == "Answer") return fever ? TaskKind::fever_verify : TaskKind::mqa_answer;
    if (cue == "Query") return fever ? TaskKind::fever_query_gen : TaskKind::mqa_query_gen;
    throw MalformedResponse("mock cannot recognise prompt cue '" + std::string(cue) + "'");
}

std::string join_queries(const std::vector<std::string>& queries) {
    std::string out;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        out += i == 0 ? " " : "\nQuery: ";
        out += queries[i];
    }
    return out;
}

std::string fewshot_complete(const PromptText& prompt) {
    static const std::vector<FewShotExample> mqa = [] {
        auto v = builtin_examples(TaskKind::mqa_question_gen, Relation::topic);
        auto h = builtin_examples(TaskKind::mqa_question_gen, Relation::hyper);
        v.insert(v.end(), h.begin(), h.end());
        return v;
    }();
    static const std::vector<FewShotExample> fever = builtin_examples(TaskKind::fever_verify, Relation::hyper);

    const TaskKind task = detect_task(prompt.text);
    const auto& pool = is_fever(task) ? fever : mqa;
    const std::string unknown = is_fever(task) ? " NOT ENOUGH INFO" : " unknown";
    const PromptTarget target = parse_prompt(task, prompt.text).target;
    const auto& docs = target.documents;

    auto same_pair = [&](const FewShotExample& ex) {
        return docs.size() == 2 && ((docs[0] == ex.documents[0] && docs[1] == ex.documents[1]) ||
                                    (docs[0] == ex.documents[1] && docs[1] == ex.documents[0]));
    };

    for (const auto& ex : pool) {
        switch (task) {
            case TaskKind::mqa_question_gen:
            case TaskKind::fever_claim_gen:
                if (same_pair(ex) && target.answer == ex.answer) return " " + ex.question_or_claim;
                break;
            case TaskKind::mqa_answer:
            case TaskKind::fever_verify:
                if (target.question != ex.question_or_claim) break;
                if (same_pair(ex)) return " " + ex.answer;
                // A single document answers only one-query examples, and only
                // the document that query targets.
                if (docs.size() == 1 && (docs[0] == ex.documents[0] || docs[0] == ex.documents[1]))
                    return ex.queries.size() == 1 && docs[0] == ex.documents[0] ? " " + ex.answer : unknown;
                break;
            case TaskKind::mqa_query_gen:
            case TaskKind::fever_query_gen:
                if (same_pair(ex) && target.question == ex.question_or_claim && target.answer == ex.answer)
                    return join_queries(ex.queries);
                break;
        }
    }
    switch (task) {
        case TaskKind::mqa_answer:
        case TaskKind::fever_verify: return unknown;
        default: return "";
    }
}

// Title of a synthetic document: the text before the first " is ".
std::string title_of(const std::string& doc) {
    const auto pos = doc.find(" is ");
    return pos == std::string::npos ? std::string() : doc.substr(0, pos);
}

std::string embedded_answer(const std::string& question) {
    static constexpr std::string_view kMarker = " relates to ";
    const auto pos = question.rfind(kMarker);
    if (pos == std::string::npos) return {};
    std::string rest = question.substr(pos + kMarker.size());
    if (!rest.empty() && rest.back() == '?') rest.pop_back();
    return rest;
}

std::string synthetic_complete(const PromptText& prompt, std::optional<std::uint64_t> seed) {
    const TaskKind task = detect_task(prompt.text);
    const PromptTarget target = parse_prompt(task, prompt.text).target;
    Rng rng(derive_seed(seed.value_or(0), prompt.text, "synthetic-mock"));
    const double r = rng.uniform();
    const auto& docs = target.documents;
    const std::string t1 = title_of(docs.at(0));
    const std::string t2 = docs.size() > 1 ? title_of(docs[1]) : std::string();
    static const char* const kLabels[] = {"SUPPORTS", "REFUTES", "NOT ENOUGH INFO"};

    switch (task) {
        case TaskKind::mqa_question_gen: {
            const std::string& answer = target.answer.value();
            if (r < 0.06) return "";
            if (r < 0.14) return " What is the birthplace of the man?";
            if (r < 0.20) return " Which one relates to " + answer + "?";
            return " Which of " + t1 + " and " + t2 + " relates to " + answer + "?";
        }
        case TaskKind::fever_claim_gen:
            if (r < 0.06) return "";
            return " " + t1 + " is linked to " + t2 + ".";
        case TaskKind::mqa_answer: {
            const std::string answer = embedded_answer(target.question.value());
            if (answer.empty()) return " unknown";
            if (docs.size() == 2) {
                if (r < 0.70) return " " + answer;
                if (r < 0.80) return " " + split_whitespace(answer).front();
                return " unknown";
            }
            const bool present = normalize_answer(docs[0]).find(normalize_answer(answer)) != std::string::npos;
            return present && r < 0.5 ? " " + answer : " unknown";
        }
        case TaskKind::fever_verify:
            return std::string(" ") + kLabels[rng.below(3)];
        case TaskKind::mqa_query_gen:
        case TaskKind::fever_query_gen: {
            if (r < 0.05) return "no queries here";
            std::vector<std::string> pool = {t1, t2, t1 + " " + t2, "zzq " + std::to_string(rng.below(1000)),
                                             "about " + t1, target.question.value()};
            rng.shuffle(pool);
            pool.resize(rng.below(5));
            return join_queries(pool);
        }
    }
    return "";
}

}  // namespace

MockBackend::Program fewshot_mock_program() {
    return [](const PromptText& prompt, std::optional<std::uint64_t>) { return fewshot_complete(prompt); };
}

MockBackend::Program synthetic_mock_program() { return synthetic_complete; }

}  // namespace hopsynth
