#include "hopsynth/promptkit.h"

#include <fstream>

#include <json.hpp>

#include "hopsynth/error.h"
#include "text_util.h"

namespace hopsynth {

using nlohmann::json;

std::string_view to_string(TaskKind t) {
    switch (t) {
        case TaskKind::mqa_question_gen: return "mqa_question_gen";
        case TaskKind::mqa_answer: return "mqa_answer";
        case TaskKind::mqa_query_gen: return "mqa_query_gen";
        case TaskKind::fever_claim_gen: return "fever_claim_gen";
        case TaskKind::fever_verify: return "fever_verify";
        case TaskKind::fever_query_gen: return "fever_query_gen";
    }
    return "?";
}

bool is_fever(TaskKind t) {
    return t == TaskKind::fever_claim_gen || t == TaskKind::fever_verify || t == TaskKind::fever_query_gen;
}

void check_task_setting(TaskKind task, Relation setting) {
    if (is_fever(task) && setting == Relation::topic)
        throw InvalidArgument(std::string(to_string(task)) + " only supports the hyper setting");
}

const std::vector<std::string>& synthesis_stop_sequences() {
    static const std::vector<std::string> kStops = {"\n\n", "\nDocument:"};
    return kStops;
}

std::string_view question_label(TaskKind task) { return is_fever(task) ? "Claim" : "Question"; }

namespace {

enum class Shape { question_gen, answer, query_gen };

Shape shape_of(TaskKind t) {
    switch (t) {
        case TaskKind::mqa_question_gen:
        case TaskKind::fever_claim_gen: return Shape::question_gen;
        case TaskKind::mqa_answer:
        case TaskKind::fever_verify: return Shape::answer;
        default: return Shape::query_gen;
    }
}

std::string clean(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c == '\n' || c == '\r') c = ' ';
    return out;
}

void line(std::string& out, std::string_view label, std::string_view value) {
    out += label;
    out += ": ";
    out += clean(value);
    out += '\n';
}

}  // namespace

std::string_view cue_of(TaskKind task) {
    switch (shape_of(task)) {
        case Shape::question_gen: return question_label(task);
        case Shape::answer: return "Answer";
        case Shape::query_gen: return "Query";
    }
    return "Answer";
}

PromptText render_prompt(TaskKind task, Relation setting, std::span<const FewShotExample> examples,
                         const PromptTarget& target) {
    check_task_setting(task, setting);
    const Shape shape = shape_of(task);
    const std::string_view qlabel = question_label(task);

    if (target.documents.empty() || target.documents.size() > 2)
        throw InvalidArgument("prompt target needs one or two documents");
    if (shape == Shape::question_gen && !target.answer)
        throw InvalidArgument(std::string(to_string(task)) + " prompt needs an answer");
    if (shape == Shape::answer && !target.question)
        throw InvalidArgument(std::string(to_string(task)) + " prompt needs a question");
    if (shape == Shape::query_gen && (!target.question || !target.answer))
        throw InvalidArgument(std::string(to_string(task)) + " prompt needs a question and an answer");

    std::string out;
    for (const auto& ex : examples) {
        for (const auto& d : ex.documents) line(out, "Document", d);
        switch (shape) {
            case Shape::question_gen:
                line(out, "Answer", ex.answer);
                line(out, qlabel, ex.question_or_claim);
                break;
            case Shape::answer:
                line(out, qlabel, ex.question_or_claim);
                line(out, "Answer", ex.answer);
                break;
            case Shape::query_gen:
                line(out, qlabel, ex.question_or_claim);
                line(out, "Answer", ex.answer);
                for (const auto& q : ex.queries) line(out, "Query", q);
                break;
        }
        out += '\n';
    }

    for (const auto& d : target.documents) line(out, "Document", d);
    switch (shape) {
        case Shape::question_gen:
            line(out, "Answer", *target.answer);
            break;
        case Shape::answer:
            line(out, qlabel, *target.question);
            break;
        case Shape::query_gen:
            line(out, qlabel, *target.question);
            line(out, "Answer", *target.answer);
            break;
    }
    out += cue_of(task);
    out += ':';
    return PromptText{std::move(out), synthesis_stop_sequences()};
}

PromptText render_prompt(TaskKind task, Relation setting, std::span<const FewShotExample> examples,
                         const DocumentPair& pair, const std::optional<std::string>& answer,
                         const std::optional<std::string>& question) {
    PromptTarget target{{pair.d1.text, pair.d2.text}, question, answer};
    return render_prompt(task, setting, examples, target);
}

ParsedPrompt parse_prompt(TaskKind task, std::string_view text) {
    const std::string_view qlabel = question_label(task);
    std::vector<std::string_view> blocks;
    for (std::size_t start = 0;;) {
        const auto pos = text.find("\n\n", start);
        blocks.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 2;
    }

    ParsedPrompt parsed;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const bool is_target = b + 1 == blocks.size();
        FewShotExample ex;
        PromptTarget target;
        std::size_t ndocs = 0;
        std::size_t start = 0;
        const std::string_view block = blocks[b];
        while (start <= block.size()) {
            auto end = block.find('\n', start);
            if (end == std::string_view::npos) end = block.size();
            const std::string_view ln = block.substr(start, end - start);
            start = end + 1;
            const auto colon = ln.find(':');
            if (colon == std::string_view::npos) throw ParseError("prompt line without label");
            const std::string_view label = ln.substr(0, colon);
            if (is_target && colon + 1 == ln.size()) {
                if (label != cue_of(task)) throw ParseError("unexpected cue '" + std::string(label) + "'");
                break;
            }
            if (ln.size() < colon + 2 || ln[colon + 1] != ' ') throw ParseError("malformed prompt line");
            std::string value(ln.substr(colon + 2));
            if (label == "Document") {
                if (is_target)
                    target.documents.push_back(std::move(value));
                else if (ndocs < 2)
                    ex.documents[ndocs++] = std::move(value);
                else
                    throw ParseError("more than two documents in an example");
            } else if (label == qlabel) {
                if (is_target) target.question = value;
                ex.question_or_claim = std::move(value);
            } else if (label == "Answer") {
                if (is_target) target.answer = value;
                ex.answer = std::move(value);
            } else if (label == "Query") {
                ex.queries.push_back(std::move(value));
            } else {
                throw ParseError("unknown prompt label '" + std::string(label) + "'");
            }
        }
        if (is_target)
            parsed.target = std::move(target);
        else
            parsed.examples.push_back(std::move(ex));
    }
    return parsed;
}

std::vector<FewShotExample> load_examples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read examples file '" + path.string() + "'");
    std::vector<FewShotExample> out;
    std::string ln;
    std::size_t lineno = 0;
    while (std::getline(in, ln)) {
        ++lineno;
        if (text::trim(ln).empty()) continue;
        try {
            const json j = json::parse(ln);
            FewShotExample ex;
            const auto& docs = j.at("documents");
            if (!docs.is_array() || docs.size() != 2) throw ParseError("'documents' must hold two strings", lineno);
            ex.documents = {docs[0].get<std::string>(), docs[1].get<std::string>()};
            ex.question_or_claim = j.at("question").get<std::string>();
            ex.answer = j.at("answer").get<std::string>();
            if (j.contains("queries")) ex.queries = j["queries"].get<std::vector<std::string>>();
            if (ex.queries.size() > 2) throw ParseError("at most two queries per example", lineno);
            out.push_back(std::move(ex));
        } catch (const json::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

std::string examples_to_jsonl(const std::vector<FewShotExample>& examples) {
    std::string out;
    for (const auto& ex : examples) {
        json j;
        j["documents"] = {ex.documents[0], ex.documents[1]};
        j["question"] = ex.question_or_claim;
        j["answer"] = ex.answer;
        j["queries"] = ex.queries;
        out += j.dump(-1, ' ', false);
        out += '\n';
    }
    return out;
}

}  // namespace hopsynth
