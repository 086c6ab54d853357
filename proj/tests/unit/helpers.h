#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hopsynth/rng.h"

namespace testing {

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hopsynth_unit_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::filesystem::path source_path(const std::string& rel) {
    return std::filesystem::path(HOPSYNTH_SOURCE_DIR) / rel;
}

}  // namespace testing
