#include "hopsynth/synthesis.h"

#include "hopsynth/error.h"
#include "hopsynth/metrics.h"
#include "hopsynth/rng.h"
#include "text_util.h"

namespace hopsynth {

std::string_view to_string(TaskFamily t) { return t == TaskFamily::mqa ? "mqa" : "fever"; }

TaskFamily parse_task_family(std::string_view s) {
    if (s == "mqa") return TaskFamily::mqa;
    if (s == "fever") return TaskFamily::fever;
    throw InvalidArgument("unknown task '" + std::string(s) + "' (expected mqa or fever)");
}

TaskKind question_task(TaskFamily t) { return t == TaskFamily::mqa ? TaskKind::mqa_question_gen : TaskKind::fever_claim_gen; }
TaskKind answer_task(TaskFamily t) { return t == TaskFamily::mqa ? TaskKind::mqa_answer : TaskKind::fever_verify; }
TaskKind query_task(TaskFamily t) { return t == TaskFamily::mqa ? TaskKind::mqa_query_gen : TaskKind::fever_query_gen; }

const std::vector<std::string>& fever_labels() {
    static const std::vector<std::string> kLabels = {"SUPPORTS", "REFUTES", "NOT ENOUGH INFO"};
    return kLabels;
}

ExampleSet ExampleSet::builtin(TaskFamily task) {
    ExampleSet set;
    set.hyper = builtin_examples(question_task(task), Relation::hyper);
    if (task == TaskFamily::mqa) set.topic = builtin_examples(question_task(task), Relation::topic);
    return set;
}

ExampleSet ExampleSet::load(const std::filesystem::path& path, TaskFamily task) {
    ExampleSet set;
    if (!std::filesystem::is_directory(path)) {
        set.hyper = load_examples(path);
        if (task == TaskFamily::mqa) set.topic = set.hyper;
        return set;
    }
    if (task == TaskFamily::fever) {
        set.hyper = load_examples(path / "fever.jsonl");
    } else {
        set.hyper = load_examples(path / "mqa_hyper.jsonl");
        set.topic = load_examples(path / "mqa_topic.jsonl");
    }
    return set;
}

namespace {

DecodeParams params_for(DecodeStage stage, const SynthesisContext& ctx, const std::string& id, std::string_view stream) {
    DecodeParams p = default_decode_params(stage);
    p.seed = derive_seed(ctx.seed, id, stream);
    return p;
}

std::string repair_question(std::string q) {
    if (q.empty() || q.back() == '?') return q;
    if (q.back() == '.' || q.back() == '!') q.pop_back();
    return q + "?";
}

}  // namespace

std::optional<QuestionDraft> generate_question(const std::string& id, const DocumentPair& pair,
                                               const std::string& answer, const SynthesisContext& ctx) {
    const TaskKind task = question_task(ctx.task);
    check_task_setting(task, pair.relation);
    const PromptText prompt =
        render_prompt(task, pair.relation, ctx.examples.for_relation(pair.relation), pair, answer, std::nullopt);
    std::string text;
    try {
        text = std::string(text::trim(complete(ctx.backend, prompt, params_for(DecodeStage::question_gen, ctx, id, "question"))));
    } catch (const EmptyCompletion&) {
        return std::nullopt;
    }
    if (text.empty()) return std::nullopt;
    if (ctx.task == TaskFamily::mqa) text = repair_question(std::move(text));
    return QuestionDraft{id, pair, ctx.task, std::move(text), answer};
}

bool entity_count_filter(const QuestionDraft& draft, const EntityRecognizer& recognizer, const FilterConfig& config,
                         std::string* warning) {
    std::size_t count = 0;
    try {
        const auto found = recognizer.recognize({draft.text});
        if (!found.empty()) count = found.front().size();
    } catch (const std::exception& e) {
        if (warning) *warning = "entity recognizer failed for " + draft.id + ": " + e.what();
        count = 0;
    }
    const int need = draft.pair.relation == Relation::hyper ? config.min_entities_hyper : config.min_entities_topic;
    return static_cast<long long>(count) >= need;
}

std::string answer_question(const std::string& question, const std::vector<Document>& docs, Relation setting,
                            const SynthesisContext& ctx, const std::string& id, std::string_view stream) {
    if (docs.empty() || docs.size() > 2) throw InvalidArgument("answer_question needs one or two documents");
    PromptTarget target;
    for (const auto& d : docs) target.documents.push_back(d.text);
    target.question = question;
    const PromptText prompt =
        render_prompt(answer_task(ctx.task), setting, ctx.examples.for_relation(setting), target);
    try {
        return std::string(
            text::trim(complete(ctx.backend, prompt, params_for(DecodeStage::answering, ctx, id, stream))));
    } catch (const EmptyCompletion&) {
        return {};
    }
}

bool decide_answerable(std::string_view pred, std::string_view prepared, const FilterConfig& config, TaskFamily task) {
    if (task == TaskFamily::fever) return text::trim(pred) == text::trim(prepared);
    return token_f1(pred, prepared) > config.f1_threshold;
}

HopDecision classify_hops(const QuestionDraft& draft, const std::string& pred_both, const std::string& pred_first,
                          const std::string& pred_second, const FilterConfig& config) {
    HopDecision d;
    if (!decide_answerable(pred_both, draft.prepared_answer, config, draft.task)) {
        d.verdict = Verdict::drop;
        return d;
    }
    d.verdict = Verdict::keep;
    d.answerable_in.both = true;
    d.answerable_in.first = decide_answerable(pred_first, pred_both, config, draft.task);
    d.answerable_in.second = decide_answerable(pred_second, pred_both, config, draft.task);
    if (d.answerable_in.first || d.answerable_in.second) {
        d.final_answer = pred_both;
        d.hops = draft.pair.relation == Relation::hyper ? HopCount::one : HopCount::two;
    } else {
        d.final_answer = draft.prepared_answer;
        d.hops = HopCount::two;
    }
    return d;
}

std::vector<std::string> parse_query_lines(std::string_view completion, std::size_t cap) {
    static constexpr std::string_view kLabel = "Query:";
    std::vector<std::string> out;
    std::size_t start = 0;
    bool first_line = true;
    while (start <= completion.size() && out.size() < cap) {
        auto end = completion.find('\n', start);
        if (end == std::string_view::npos) end = completion.size();
        const std::string_view raw = completion.substr(start, end - start);
        const std::string_view ln = text::trim(raw);
        std::string_view q;
        bool take = false;
        if (ln.substr(0, kLabel.size()) == kLabel) {
            q = text::trim(ln.substr(kLabel.size()));
            take = true;
        } else if (first_line && !raw.empty() && (raw.front() == ' ' || raw.front() == '\t')) {
            // Continuation of the prompt's own "Query:" cue.
            q = ln;
            take = true;
        }
        if (take && !q.empty()) out.emplace_back(q);
        first_line = false;
        if (end == completion.size()) break;
        start = end + 1;
    }
    return out;
}

std::vector<QueryCandidate> generate_queries(const std::string& id, const DocumentPair& pair,
                                             const std::string& question, const std::string& answer,
                                             const SynthesisContext& ctx) {
    if (question.empty()) throw InvalidArgument("generate_queries needs a question");
    const TaskKind task = query_task(ctx.task);
    const PromptText prompt =
        render_prompt(task, pair.relation, ctx.examples.for_relation(pair.relation), pair, answer, question);
    std::vector<QueryCandidate> out;
    try {
        const std::string completion =
            complete(ctx.backend, prompt, params_for(DecodeStage::query_gen, ctx, id, "queries"));
        for (auto& q : parse_query_lines(completion))
            out.push_back({std::move(q), QueryOrigin::model, static_cast<int>(out.size())});
    } catch (const EmptyCompletion&) {
    }
    out.push_back({question, QueryOrigin::original_question_backup, static_cast<int>(out.size())});
    return out;
}

}  // namespace hopsynth
