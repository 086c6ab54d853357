#pragma once

#include <cstdint>
#include <string>

namespace fixture {

// JSONL corpus of n documents whose texts start with "<Title> is ...", the
// shape the synthetic mock backend expects. Each document links to a few
// others and carries one of `topics` topic labels.
std::string synthetic_corpus_jsonl(std::size_t n, std::uint64_t seed, std::size_t topics = 10);

}  // namespace fixture
