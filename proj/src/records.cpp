#include "hopsynth/records.h"

#include <fstream>

#include "hopsynth/error.h"
#include "text_util.h"

namespace hopsynth {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Verdict v) { return v == Verdict::keep ? "keep" : "drop"; }
std::string_view to_string(HopCount h) { return h == HopCount::one ? "one" : "two"; }
std::string_view to_string(QueryOrigin o) { return o == QueryOrigin::model ? "model" : "original_question_backup"; }

namespace {

Verdict parse_verdict(const std::string& s) {
    if (s == "keep") return Verdict::keep;
    if (s == "drop") return Verdict::drop;
    throw ParseError("unknown verdict '" + s + "'");
}

HopCount parse_hops(const std::string& s) {
    if (s == "one") return HopCount::one;
    if (s == "two") return HopCount::two;
    throw ParseError("unknown hop count '" + s + "'");
}

QueryOrigin parse_origin(const std::string& s) {
    if (s == "model") return QueryOrigin::model;
    if (s == "original_question_backup") return QueryOrigin::original_question_backup;
    throw ParseError("unknown query origin '" + s + "'");
}

template <typename T>
std::optional<T> opt(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<T>();
}

}  // namespace

ordered_json to_json(const StageRecord& r) {
    ordered_json j;
    j["id"] = r.id;
    j["task"] = to_string(r.task);
    j["relation"] = to_string(r.relation);
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["answer"] = r.answer;
    j["answer_source"] = to_string(r.answer_source);
    if (r.question) j["question"] = *r.question;
    if (r.pred_both) j["pred_both"] = *r.pred_both;
    if (r.pred_first) j["pred_first"] = *r.pred_first;
    if (r.pred_second) j["pred_second"] = *r.pred_second;
    if (r.decision) {
        const auto& d = *r.decision;
        ordered_json in = ordered_json::array();
        if (d.answerable_in.both) in.push_back("both");
        if (d.answerable_in.first) in.push_back("first");
        if (d.answerable_in.second) in.push_back("second");
        j["decision"] = {{"verdict", to_string(d.verdict)},
                         {"hops", to_string(d.hops)},
                         {"answerable_in", in},
                         {"final_answer", d.final_answer}};
    }
    if (r.candidates) {
        ordered_json cs = ordered_json::array();
        for (const auto& c : *r.candidates)
            cs.push_back({{"text", c.text}, {"origin", to_string(c.origin)}, {"rank", c.generation_rank}});
        j["candidates"] = cs;
    }
    return j;
}

StageRecord stage_record_from_json(const json& j) {
    try {
        StageRecord r;
        r.id = j.at("id").get<std::string>();
        r.task = parse_task_family(j.at("task").get<std::string>());
        r.relation = parse_relation(j.at("relation").get<std::string>());
        r.d1 = j.at("d1").get<std::string>();
        r.d2 = j.at("d2").get<std::string>();
        r.answer = j.at("answer").get<std::string>();
        r.answer_source = parse_answer_source(j.value("answer_source", std::string("entity")));
        r.question = opt<std::string>(j, "question");
        r.pred_both = opt<std::string>(j, "pred_both");
        r.pred_first = opt<std::string>(j, "pred_first");
        r.pred_second = opt<std::string>(j, "pred_second");
        if (j.contains("decision")) {
            const auto& d = j["decision"];
            HopDecision h;
            h.verdict = parse_verdict(d.at("verdict").get<std::string>());
            h.hops = parse_hops(d.at("hops").get<std::string>());
            for (const auto& s : d.at("answerable_in")) {
                const auto v = s.get<std::string>();
                if (v == "both") h.answerable_in.both = true;
                else if (v == "first") h.answerable_in.first = true;
                else if (v == "second") h.answerable_in.second = true;
                else throw ParseError("unknown answerable_in entry '" + v + "'");
            }
            h.final_answer = d.at("final_answer").get<std::string>();
            r.decision = h;
        }
        if (j.contains("candidates")) {
            std::vector<QueryCandidate> cs;
            for (const auto& c : j["candidates"])
                cs.push_back({c.at("text").get<std::string>(), parse_origin(c.at("origin").get<std::string>()),
                              c.at("rank").get<int>()});
            r.candidates = std::move(cs);
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

ordered_json to_json(const DataInstance& inst) {
    ordered_json j;
    j["id"] = inst.id;
    j["task"] = to_string(inst.task);
    j["relation"] = to_string(inst.relation);
    j["question"] = inst.question;
    j["answer"] = inst.answer;
    ordered_json hops = ordered_json::array();
    for (const auto& h : inst.hops) hops.push_back({{"query", h.query}, {"retrieved", h.retrieved}});
    j["hops"] = hops;
    j["source_pair"] = {inst.source_pair.first, inst.source_pair.second};
    j["n_hops"] = inst.n_hops();
    return j;
}

DataInstance instance_from_json(const json& j) {
    try {
        DataInstance inst;
        inst.id = j.at("id").get<std::string>();
        inst.task = parse_task_family(j.at("task").get<std::string>());
        inst.relation = parse_relation(j.at("relation").get<std::string>());
        inst.question = j.at("question").get<std::string>();
        inst.answer = j.at("answer").get<std::string>();
        for (const auto& h : j.at("hops"))
            inst.hops.push_back({h.at("query").get<std::string>(), h.at("retrieved").get<std::vector<DocId>>()});
        const auto& sp = j.at("source_pair");
        if (!sp.is_array() || sp.size() != 2) throw ParseError("source_pair must hold two ids");
        inst.source_pair = {sp[0].get<std::string>(), sp[1].get<std::string>()};
        if (j.at("n_hops").get<int>() != inst.n_hops()) throw ParseError("n_hops disagrees with hops");
        return inst;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

std::string to_jsonl_line(const ordered_json& j) {
    return j.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
}

std::vector<StageRecord> read_stage_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::vector<StageRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            out.push_back(stage_record_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError(e.what(), lineno);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

void write_stage_file(const std::vector<StageRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    for (const auto& r : records) out << to_jsonl_line(to_json(r));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace hopsynth
