#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hopsynth/corpus.h"
#include "hopsynth/retrieval.h"
#include "hopsynth/synthesis.h"

namespace hopsynth {

struct VerifyConfig {
    int k = 7;
};

struct QueryVerdict {
    QueryCandidate candidate;
    bool valid = false;
    bool hit_d1 = false;
    bool hit_d2 = false;
    std::vector<DocId> retrieved_ids;

    bool operator==(const QueryVerdict&) const = default;
};

struct Hop {
    std::string query;
    std::vector<DocId> retrieved;

    bool operator==(const Hop&) const = default;
};

struct DataInstance {
    std::string id;
    TaskFamily task = TaskFamily::mqa;
    Relation relation = Relation::hyper;
    std::string question;
    std::string answer;
    std::vector<Hop> hops;
    std::pair<DocId, DocId> source_pair;

    int n_hops() const { return static_cast<int>(hops.size()); }
    bool operator==(const DataInstance&) const = default;
};

// Why a draft did not become an instance. The first three are decided before
// query verification.
enum class DropReason { empty_question, entity_filter, unanswerable, no_valid_query, coverage, answer_not_retrieved };

std::string_view to_string(DropReason r);
const std::vector<DropReason>& all_drop_reasons();

// Embedding failures yield an invalid verdict and a message in *warning.
QueryVerdict verify_query(const QueryCandidate& candidate, const DocumentPair& pair, const FlatIndex& index,
                          const EmbeddingProvider& provider, const VerifyConfig& config,
                          std::string* warning = nullptr);

// Valid verdicts only, one per duplicate class (classes share a hit on the
// same pair document, merged transitively). The survivor is the shortest
// text, then the model candidate, then the lower rank. Input order is kept.
std::vector<QueryVerdict> dedup_queries(const std::vector<QueryVerdict>& verdicts);

struct FinalizeResult {
    std::optional<DataInstance> instance;
    std::optional<DropReason> reason;
};

// `verdicts`: deduplicated model verdicts in generation order, optionally
// followed by the backup verdict, which is used only when no model verdict is
// valid.
FinalizeResult finalize_instance(const QuestionDraft& draft, const HopDecision& decision,
                                 const std::vector<QueryVerdict>& verdicts, const CorpusStore& store,
                                 const VerifyConfig& config);

// True when normalize_answer(answer) occurs in the normalized, space-joined
// texts of `ids`.
bool answer_in_documents(std::string_view answer, const std::vector<DocId>& ids, const CorpusStore& store);

// Standalone re-check of an emitted instance, including re-running every hop
// search. Returns the violated invariants; empty means valid.
std::vector<std::string> validate_instance(const DataInstance& instance, const CorpusStore& store,
                                           const FlatIndex& index, const EmbeddingProvider& provider,
                                           const VerifyConfig& config);

}  // namespace hopsynth
