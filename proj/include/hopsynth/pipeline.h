#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopsynth/corpus.h"
#include "hopsynth/entities.h"
#include "hopsynth/genbackend.h"
#include "hopsynth/records.h"
#include "hopsynth/retrieval.h"
#include "hopsynth/synthesis.h"
#include "hopsynth/verification.h"

namespace hopsynth {

struct PipelineSettings {
    TaskFamily task = TaskFamily::mqa;
    std::uint64_t seed = 0;
    int workers = 1;
    PairingConfig pairing;
    FilterConfig filter;
    VerifyConfig verify;
};

struct PipelineServices {
    const CompletionBackend& backend;
    const EntityRecognizer& recognizer;
    const EmbeddingProvider& embedder;
    const ExampleSet& examples;
};

// Counters for one run. Every tuple that enters question generation ends up
// either emitted or under exactly one drop reason.
class PipelineReport {
public:
    std::size_t documents = 0;
    std::size_t pairs = 0;
    std::size_t pairs_skipped = 0;  // topic pairs under fever
    std::size_t no_candidates = 0;
    std::size_t drafts_in = 0;
    std::size_t emitted = 0;
    std::map<DropReason, std::size_t> drops;

    void drop(DropReason r, std::size_t n = 1);
    void warn(std::string message);
    std::vector<std::string> warnings() const;
    std::size_t total_drops() const;
    bool conserved() const { return drafts_in == emitted + total_drops(); }
    nlohmann::ordered_json to_json() const;

private:
    mutable std::mutex mu_;
    std::vector<std::string> warnings_;
};

// Pairs every document and picks an answer per pair (a fever label for
// fever). Record ids are "<d1 id>#<pair index>".
std::vector<StageRecord> make_tuples(const CorpusStore& store, const PipelineSettings& settings,
                                     const EntityRecognizer& recognizer, PipelineReport& report);

// Reads prepared tuples and checks them against the store.
std::vector<StageRecord> load_tuples(const std::filesystem::path& path, const CorpusStore& store,
                                     const PipelineSettings& settings);

// Question generation plus the entity filter.
std::vector<StageRecord> stage_questions(const std::vector<StageRecord>& tuples, const CorpusStore& store,
                                         const PipelineServices& services, const PipelineSettings& settings,
                                         PipelineReport& report);

// Three answering passes and hop classification; drops unanswerable drafts.
std::vector<StageRecord> stage_answers(const std::vector<StageRecord>& drafts, const CorpusStore& store,
                                       const PipelineServices& services, const PipelineSettings& settings,
                                       PipelineReport& report);

std::vector<StageRecord> stage_queries(const std::vector<StageRecord>& answered, const CorpusStore& store,
                                       const PipelineServices& services, const PipelineSettings& settings);

// Verification, dedup and hop assembly.
std::vector<DataInstance> stage_verify(const std::vector<StageRecord>& with_queries, const CorpusStore& store,
                                       const FlatIndex& index, const PipelineServices& services,
                                       const PipelineSettings& settings, PipelineReport& report);

// Whole chain from tuples to instances.
std::vector<DataInstance> run_pipeline(const std::vector<StageRecord>& tuples, const CorpusStore& store,
                                       const FlatIndex& index, const PipelineServices& services,
                                       const PipelineSettings& settings, PipelineReport& report);

}  // namespace hopsynth
