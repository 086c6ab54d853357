#include "hopsynth/evalharness.h"

#include <fstream>
#include <map>

#include "hopsynth/error.h"
#include "hopsynth/metrics.h"
#include "hopsynth/parallel.h"
#include "hopsynth/rng.h"
#include "text_util.h"

namespace hopsynth {

std::string_view to_string(HaltReason r) {
    switch (r) {
        case HaltReason::answered: return "answered";
        case HaltReason::hop_limit: return "hop_limit";
        case HaltReason::empty_completion: return "empty_completion";
        case HaltReason::backend_error: return "backend_error";
    }
    return "?";
}

namespace {

std::string one_line(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c == '\n' || c == '\r') c = ' ';
    return out;
}

const std::vector<std::string>& episode_stops() {
    static const std::vector<std::string> kStops = {"\n"};
    return kStops;
}

std::optional<std::string_view> strip_label(std::string_view s, std::string_view label) {
    if (s.substr(0, label.size()) != label) return std::nullopt;
    return text::trim(s.substr(label.size()));
}

}  // namespace

std::string render_episode_context(const std::string& question, const std::vector<Turn>& turns,
                                   const CorpusStore& store, TaskFamily task, bool force_answer) {
    std::string out = task == TaskFamily::fever ? "Claim: " : "Question: ";
    out += one_line(question);
    out += '\n';
    for (const auto& t : turns) {
        out += "Query: " + one_line(t.query) + '\n';
        for (const auto& id : t.retrieved_ids) out += "Document: " + one_line(store.at(id).text) + '\n';
    }
    if (force_answer) out += "Answer:";
    return out;
}

Transcript run_episode(const std::string& question, const CompletionBackend& backend, const FlatIndex& index,
                       const EmbeddingProvider& provider, const CorpusStore& store, const EvalConfig& config,
                       const DecodeParams& params) {
    if (config.max_hops < 1 || config.k < 1) throw InvalidArgument("max_hops and k must be >= 1");
    Transcript tr;
    tr.question = question;
    auto call = [&](bool force) -> std::optional<std::string> {
        PromptText prompt{render_episode_context(question, tr.turns, store, config.task, force), episode_stops()};
        DecodeParams p = params;
        // Each turn gets its own seed so sampled episodes do not repeat themselves.
        if (p.seed) p.seed = derive_seed(*p.seed, std::to_string(tr.turns.size()), force ? "force" : "turn");
        try {
            std::string c = complete(backend, prompt, p);
            tr.completions.push_back(c);
            return c;
        } catch (const EmptyCompletion&) {
            tr.halted_reason = HaltReason::empty_completion;
        } catch (const std::exception& e) {
            tr.halted_reason = HaltReason::backend_error;
            tr.error = e.what();
        }
        return std::nullopt;
    };

    for (;;) {
        if (static_cast<int>(tr.turns.size()) >= config.max_hops) {
            auto c = call(true);
            if (!c) return tr;
            std::string_view ans = text::trim(*c);
            if (auto s = strip_label(ans, "Answer:")) ans = *s;
            if (ans.empty()) {
                tr.halted_reason = HaltReason::empty_completion;
                return tr;
            }
            tr.final_answer = std::string(ans);
            tr.halted_reason = HaltReason::hop_limit;
            return tr;
        }
        auto c = call(false);
        if (!c) return tr;
        const std::string_view line = text::trim(*c);
        if (auto q = strip_label(line, "Query:")) {
            if (q->empty()) {
                tr.halted_reason = HaltReason::empty_completion;
                return tr;
            }
            Turn turn{std::string(*q), {}};
            try {
                const auto vec = provider.embed({turn.query});
                for (auto& s : index.search(vec.at(0), static_cast<std::size_t>(config.k)))
                    turn.retrieved_ids.push_back(std::move(s.doc_id));
            } catch (const std::exception& e) {
                tr.halted_reason = HaltReason::backend_error;
                tr.error = e.what();
                return tr;
            }
            tr.turns.push_back(std::move(turn));
            continue;
        }
        std::string_view ans = line;
        if (auto a = strip_label(line, "Answer:")) ans = *a;
        if (ans.empty()) {
            tr.halted_reason = HaltReason::empty_completion;
            return tr;
        }
        tr.final_answer = std::string(ans);
        tr.halted_reason = HaltReason::answered;
        return tr;
    }
}

std::pair<double, double> score_qa(const std::vector<std::string>& predictions, const std::vector<std::string>& golds) {
    if (predictions.size() != golds.size()) throw InvalidArgument("prediction and gold counts differ");
    if (predictions.empty()) return {0.0, 0.0};
    double em = 0.0, f1 = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const ScorePair s = score_pair(predictions[i], golds[i]);
        em += s.em ? 1.0 : 0.0;
        f1 += s.f1;
    }
    const auto n = static_cast<double>(predictions.size());
    return {100.0 * em / n, 100.0 * f1 / n};
}

std::string normalize_fever_label(std::string_view label) {
    std::string out;
    for (const auto& w : split_whitespace(label)) {
        if (!out.empty()) out += ' ';
        for (char c : w) out += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
    }
    for (const auto& l : fever_labels())
        if (out == l) return out;
    throw InvalidArgument("unknown fever label '" + std::string(label) + "'");
}

double score_fever(const std::vector<std::string>& predictions, const std::vector<std::string>& golds) {
    if (predictions.size() != golds.size()) throw InvalidArgument("prediction and gold counts differ");
    if (predictions.empty()) return 0.0;
    double correct = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (normalize_fever_label(predictions[i]) == normalize_fever_label(golds[i])) correct += 1.0;
    return 100.0 * correct / static_cast<double>(predictions.size());
}

std::string self_consistency(const std::vector<std::string>& answers) {
    if (answers.empty()) throw InvalidArgument("self_consistency needs at least one answer");
    std::vector<std::string> keys;
    std::vector<std::size_t> counts;
    std::vector<std::size_t> first;
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < answers.size(); ++i) {
        const std::string key = normalize_answer(answers[i]);
        auto [it, inserted] = slot.emplace(key, keys.size());
        if (inserted) {
            keys.push_back(key);
            counts.push_back(0);
            first.push_back(i);
        }
        ++counts[it->second];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
        if (counts[c] > counts[best]) best = c;
    return answers[first[best]];
}

double aggregate_average(const std::vector<DatasetScore>& per_dataset) {
    if (per_dataset.empty()) throw InvalidArgument("aggregate_average needs at least one dataset");
    double sum = 0.0;
    for (const auto& d : per_dataset) sum += d.is_accuracy ? d.accuracy : (d.em + d.f1) / 2.0;
    return sum / static_cast<double>(per_dataset.size());
}

std::vector<EvalItem> load_eval_items(const std::filesystem::path& path, TaskFamily task) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::vector<EvalItem> out;
    std::string line;
    std::size_t lineno = 0;
    const char* gold_key = task == TaskFamily::fever ? "label" : "answer";
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const std::string q = j.contains("question") ? j["question"].get<std::string>()
                                                         : j.at("claim").get<std::string>();
            std::string gold = j.at(gold_key).get<std::string>();
            if (task == TaskFamily::fever) gold = normalize_fever_label(gold);
            out.push_back({j.at("id").get<std::string>(), q, std::move(gold)});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), lineno);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

nlohmann::ordered_json EvalReport::to_json() const {
    nlohmann::ordered_json j;
    if (task == TaskFamily::fever) {
        j["accuracy"] = accuracy;
    } else {
        j["em"] = em;
        j["f1"] = f1;
    }
    nlohmann::ordered_json items_json = nlohmann::ordered_json::array();
    for (const auto& it : items) {
        nlohmann::ordered_json turns = nlohmann::ordered_json::array();
        for (const auto& t : it.transcript.turns) turns.push_back({{"query", t.query}, {"retrieved", t.retrieved_ids}});
        nlohmann::ordered_json row;
        row["id"] = it.id;
        row["prediction"] = it.prediction;
        row["gold"] = it.gold;
        if (task == TaskFamily::fever) {
            bool ok = false;
            try {
                ok = normalize_fever_label(it.prediction) == normalize_fever_label(it.gold);
            } catch (const InvalidArgument&) {
            }
            row["correct"] = ok;
        } else {
            const ScorePair s = score_pair(it.prediction, it.gold);
            row["em"] = s.em;
            row["f1"] = s.f1;
        }
        row["turns"] = turns;
        row["halted_reason"] = to_string(it.transcript.halted_reason);
        items_json.push_back(row);
    }
    j["items"] = items_json;
    return j;
}

EvalReport evaluate(const std::vector<EvalItem>& items, const CompletionBackend& backend, const FlatIndex& index,
                    const EmbeddingProvider& provider, const CorpusStore& store, const EvalConfig& config,
                    std::uint64_t seed, int workers) {
    EvalReport report;
    report.task = config.task;
    report.items.resize(items.size());
    const int samples = config.self_consistency ? config.self_consistency_samples : 1;
    if (samples < 1) throw InvalidArgument("self_consistency_samples must be >= 1");

    parallel_for(items.size(), workers, [&](std::size_t i) {
        const EvalItem& item = items[i];
        EvalItemResult& res = report.items[i];
        res.id = item.id;
        res.gold = item.gold;
        if (!config.self_consistency) {
            DecodeParams p = default_decode_params(DecodeStage::eval_greedy);
            p.seed = derive_seed(seed, item.id, "greedy");
            res.transcript = run_episode(item.question, backend, index, provider, store, config, p);
            res.prediction = res.transcript.final_answer.value_or("");
            return;
        }
        std::vector<std::string> answers;
        for (int s = 0; s < samples; ++s) {
            DecodeParams p = default_decode_params(DecodeStage::eval_self_consistency);
            p.seed = derive_seed(seed, item.id, "sample-" + std::to_string(s));
            Transcript tr = run_episode(item.question, backend, index, provider, store, config, p);
            if (tr.final_answer) answers.push_back(*tr.final_answer);
            if (s == 0) res.transcript = std::move(tr);
        }
        res.prediction = answers.empty() ? std::string() : self_consistency(answers);
    });

    std::vector<std::string> preds, golds;
    for (const auto& r : report.items) {
        preds.push_back(r.prediction);
        golds.push_back(r.gold);
    }
    if (config.task == TaskFamily::fever) {
        double correct = 0.0;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            try {
                if (normalize_fever_label(preds[i]) == normalize_fever_label(golds[i])) correct += 1.0;
            } catch (const InvalidArgument&) {
            }
        }
        report.accuracy = preds.empty() ? 0.0 : 100.0 * correct / static_cast<double>(preds.size());
    } else {
        std::tie(report.em, report.f1) = score_qa(preds, golds);
    }
    return report;
}

}  // namespace hopsynth
