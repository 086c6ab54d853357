#include "hopsynth/genbackend.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "hopsynth/error.h"
#include "text_util.h"

namespace hopsynth {

void DecodeParams::validate() const {
    if (max_tokens < 1) throw InvalidArgument("max_tokens must be >= 1");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw InvalidArgument("temperature must be >= 0");
    if (!(top_p > 0.0 && top_p <= 1.0)) throw InvalidArgument("top_p must be in (0, 1]");
    if (top_k) {
        if (*top_k < 1) throw InvalidArgument("top_k must be >= 1");
        if (temperature == 0.0) throw InvalidArgument("top_k sampling needs temperature > 0");
        if (top_p != 1.0) throw InvalidArgument("top_k and top_p < 1 cannot be combined");
    } else if (temperature == 0.0 && top_p != 1.0) {
        throw InvalidArgument("greedy decoding cannot be combined with top_p < 1");
    }
}

DecodeParams default_decode_params(DecodeStage stage) {
    DecodeParams p;
    switch (stage) {
        case DecodeStage::question_gen:
            p.max_tokens = 64;
            p.top_p = 0.9;
            break;
        case DecodeStage::answering:
            p.max_tokens = 16;
            p.top_p = 0.9;
            break;
        case DecodeStage::query_gen:
            p.max_tokens = 64;
            p.top_p = 0.9;
            break;
        case DecodeStage::eval_greedy:
            p.max_tokens = 64;
            p.temperature = 0.0;
            break;
        case DecodeStage::eval_self_consistency:
            p.max_tokens = 64;
            p.top_k = 40;
            p.temperature = 0.7;
            break;
    }
    return p;
}

std::string trim_at_stop(std::string_view text, const std::vector<std::string>& stops) {
    std::size_t cut = text.size();
    for (const auto& s : stops) {
        if (s.empty()) continue;
        const auto pos = text.find(s);
        if (pos != std::string_view::npos && pos < cut) cut = pos;
    }
    return std::string(text.substr(0, cut));
}

std::string complete(const CompletionBackend& backend, const PromptText& prompt, const DecodeParams& params) {
    if (prompt.text.empty()) throw InvalidArgument("empty prompt");
    params.validate();
    std::vector<std::string> stops = prompt.stop_sequences;
    stops.insert(stops.end(), params.stop.begin(), params.stop.end());
    DecodeParams sent = params;
    sent.stop = stops;
    std::string out = trim_at_stop(backend.generate(prompt, sent), stops);
    if (out.empty()) throw EmptyCompletion("empty completion");
    return out;
}

std::string prompt_hash(std::string_view prompt_text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(text::fnv1a(prompt_text)));
    return buf;
}

MockBackend::MockBackend(std::unordered_map<std::string, std::string> table) : table_(std::move(table)) {}

MockBackend::MockBackend(Program program) : program_(std::move(program)) {
    if (!program_) throw InvalidArgument("mock backend needs a table or a program");
}

std::string MockBackend::generate(const PromptText& prompt, const DecodeParams& params) const {
    if (program_) return program_(prompt, params.seed);
    auto it = table_.find(prompt_hash(prompt.text));
    return it == table_.end() ? std::string() : it->second;
}

MockBackend MockBackend::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read mock table '" + path + "'");
    std::unordered_map<std::string, std::string> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            std::string key = j.contains("prompt_hash") ? j.at("prompt_hash").get<std::string>()
                                                        : prompt_hash(j.at("prompt").get<std::string>());
            table[key] = j.at("completion").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return MockBackend(std::move(table));
}

}  // namespace hopsynth
