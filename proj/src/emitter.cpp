#include "hopsynth/emitter.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "hopsynth/error.h"
#include "hopsynth/metrics.h"
#include "hopsynth/records.h"
#include "hopsynth/rng.h"
#include "text_util.h"

namespace hopsynth {

std::string dataset_to_jsonl(const std::vector<DataInstance>& instances) {
    std::string out;
    for (const auto& inst : instances) out += to_jsonl_line(to_json(inst));
    return out;
}

std::size_t write_jsonl(const std::vector<DataInstance>& instances, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << dataset_to_jsonl(instances);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
    return instances.size();
}

std::vector<DataInstance> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::vector<DataInstance> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            out.push_back(instance_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), lineno);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

std::pair<std::vector<DataInstance>, std::vector<DataInstance>> split_dev(const std::vector<DataInstance>& instances,
                                                                          std::size_t dev_size, std::uint64_t seed) {
    if (dev_size > instances.size())
        throw InvalidArgument("dev size " + std::to_string(dev_size) + " exceeds " + std::to_string(instances.size()) +
                              " instances");
    std::vector<std::size_t> idx(instances.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(derive_seed(seed, "dev", "split"));
    for (std::size_t i = 0; i < dev_size; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    std::vector<bool> is_dev(instances.size(), false);
    for (std::size_t i = 0; i < dev_size; ++i) is_dev[idx[i]] = true;
    std::pair<std::vector<DataInstance>, std::vector<DataInstance>> out;
    for (std::size_t i = 0; i < instances.size(); ++i) (is_dev[i] ? out.second : out.first).push_back(instances[i]);
    return out;
}

StatsReport dataset_stats(const std::vector<DataInstance>& instances, std::size_t dev_size) {
    if (dev_size > instances.size()) throw InvalidArgument("dev size exceeds instance count");
    StatsReport r;
    r.dev_size = dev_size;
    r.train_size = instances.size() - dev_size;
    r.fever = !instances.empty() && std::all_of(instances.begin(), instances.end(),
                                                [](const DataInstance& i) { return i.task == TaskFamily::fever; });
    if (instances.empty()) return r;

    double q_words = 0, query_words = 0, a_words = 0;
    std::size_t n_queries = 0;
    for (const auto& inst : instances) {
        (inst.n_hops() == 1 ? r.count_single : r.count_two)++;
        q_words += static_cast<double>(split_whitespace(inst.question).size());
        a_words += static_cast<double>(split_whitespace(inst.answer).size());
        for (const auto& h : inst.hops) {
            query_words += static_cast<double>(split_whitespace(h.query).size());
            ++n_queries;
        }
    }
    const auto n = static_cast<double>(instances.size());
    r.percent_single = 100.0 * static_cast<double>(r.count_single) / n;
    r.percent_two = 100.0 * static_cast<double>(r.count_two) / n;
    r.avg_question_words = q_words / n;
    if (n_queries) r.avg_query_words = query_words / static_cast<double>(n_queries);
    if (!r.fever) r.avg_answer_words = a_words / n;
    return r;
}

namespace {

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

}  // namespace

std::string format_stats(const StatsReport& r) {
    std::string out;
    auto row = [&out](const std::string& label, const std::string& value) {
        out += label;
        out.append(label.size() < 30 ? 30 - label.size() : 1, ' ');
        out += value;
        out += '\n';
    };
    row("Size of Train Set", std::to_string(r.train_size));
    row("Size of Dev Set", std::to_string(r.dev_size));
    row("#SQ Data", std::to_string(r.count_single) + " (" + fixed(r.percent_single, 2) + "%)");
    row("#TQ Data", std::to_string(r.count_two) + " (" + fixed(r.percent_two, 2) + "%)");
    auto avg = [](const std::optional<double>& v) { return v ? fixed(*v, 2) : std::string("n/a"); };
    row(r.fever ? "Avg. words per claim" : "Avg. words per question", avg(r.avg_question_words));
    row("Avg. words per query", avg(r.avg_query_words));
    if (!r.fever) row("Avg. words per answer", avg(r.avg_answer_words));
    return out;
}

nlohmann::ordered_json stats_to_json(const StatsReport& r) {
    nlohmann::ordered_json j;
    j["train_size"] = r.train_size;
    j["dev_size"] = r.dev_size;
    j["sq_count"] = r.count_single;
    j["sq_percent"] = r.percent_single;
    j["tq_count"] = r.count_two;
    j["tq_percent"] = r.percent_two;
    auto put = [&j](const char* key, const std::optional<double>& v) {
        j[key] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    put(r.fever ? "avg_claim_words" : "avg_question_words", r.avg_question_words);
    put("avg_query_words", r.avg_query_words);
    if (!r.fever) put("avg_answer_words", r.avg_answer_words);
    return j;
}

}  // namespace hopsynth
