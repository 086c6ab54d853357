#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopsynth/synthesis.h"
#include "hopsynth/verification.h"

namespace hopsynth {

// One line of an intermediate stage file. Later stages fill in more fields:
// tuples (pair + answer) -> question -> predictions and decision -> candidates.
struct StageRecord {
    std::string id;
    TaskFamily task = TaskFamily::mqa;
    Relation relation = Relation::hyper;
    DocId d1;
    DocId d2;
    std::string answer;
    AnswerSource answer_source = AnswerSource::entity;

    std::optional<std::string> question;
    std::optional<std::string> pred_both;
    std::optional<std::string> pred_first;
    std::optional<std::string> pred_second;
    std::optional<HopDecision> decision;
    std::optional<std::vector<QueryCandidate>> candidates;

    bool operator==(const StageRecord&) const = default;
};

nlohmann::ordered_json to_json(const StageRecord& r);
StageRecord stage_record_from_json(const nlohmann::json& j);

// Dataset output format; field order is fixed.
nlohmann::ordered_json to_json(const DataInstance& inst);
DataInstance instance_from_json(const nlohmann::json& j);

std::string to_jsonl_line(const nlohmann::ordered_json& j);

std::vector<StageRecord> read_stage_file(const std::filesystem::path& path);
void write_stage_file(const std::vector<StageRecord>& records, const std::filesystem::path& path);

std::string_view to_string(Verdict v);
std::string_view to_string(HopCount h);
std::string_view to_string(QueryOrigin o);

}  // namespace hopsynth
