#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopsynth/verification.h"

namespace hopsynth {

std::size_t write_jsonl(const std::vector<DataInstance>& instances, const std::filesystem::path& path);
std::string dataset_to_jsonl(const std::vector<DataInstance>& instances);
std::vector<DataInstance> read_jsonl(const std::filesystem::path& path);

// Uniform sample without replacement for dev; both halves keep input order.
std::pair<std::vector<DataInstance>, std::vector<DataInstance>> split_dev(const std::vector<DataInstance>& instances,
                                                                          std::size_t dev_size, std::uint64_t seed);

struct StatsReport {
    std::size_t train_size = 0;
    std::size_t dev_size = 0;
    std::size_t count_single = 0;
    std::size_t count_two = 0;
    double percent_single = 0.0;
    double percent_two = 0.0;
    std::optional<double> avg_question_words;
    std::optional<double> avg_query_words;
    std::optional<double> avg_answer_words;  // absent for fever
    bool fever = false;
};

// Counts cover all instances; the last dev_size of them are reported as dev.
StatsReport dataset_stats(const std::vector<DataInstance>& instances, std::size_t dev_size = 0);

// Plain-text table, one field per line.
std::string format_stats(const StatsReport& report);
nlohmann::ordered_json stats_to_json(const StatsReport& report);

}  // namespace hopsynth
