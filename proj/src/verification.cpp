#include "hopsynth/verification.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "hopsynth/error.h"
#include "hopsynth/metrics.h"
#include "text_util.h"

namespace hopsynth {

std::string_view to_string(DropReason r) {
    switch (r) {
        case DropReason::empty_question: return "empty_question";
        case DropReason::entity_filter: return "entity_filter";
        case DropReason::unanswerable: return "unanswerable";
        case DropReason::no_valid_query: return "no_valid_query";
        case DropReason::coverage: return "coverage";
        case DropReason::answer_not_retrieved: return "answer_not_retrieved";
    }
    return "?";
}

const std::vector<DropReason>& all_drop_reasons() {
    static const std::vector<DropReason> kAll = {DropReason::empty_question, DropReason::entity_filter,
                                                 DropReason::unanswerable,   DropReason::no_valid_query,
                                                 DropReason::coverage,       DropReason::answer_not_retrieved};
    return kAll;
}

QueryVerdict verify_query(const QueryCandidate& candidate, const DocumentPair& pair, const FlatIndex& index,
                          const EmbeddingProvider& provider, const VerifyConfig& config, std::string* warning) {
    if (config.k < 1) throw InvalidArgument("verify.k must be >= 1");
    QueryVerdict v;
    v.candidate = candidate;
    try {
        const auto vec = provider.embed({candidate.text});
        if (vec.size() != 1) throw MalformedResponse("expected one vector");
        for (auto& hit : index.search(vec.front(), static_cast<std::size_t>(config.k)))
            v.retrieved_ids.push_back(std::move(hit.doc_id));
    } catch (const std::exception& e) {
        if (warning) *warning = "query '" + candidate.text + "' could not be embedded: " + e.what();
        v.retrieved_ids.clear();
        return v;
    }
    for (const auto& id : v.retrieved_ids) {
        v.hit_d1 = v.hit_d1 || id == pair.d1.id;
        v.hit_d2 = v.hit_d2 || id == pair.d2.id;
    }
    v.valid = v.hit_d1 || v.hit_d2;
    return v;
}

std::vector<QueryVerdict> dedup_queries(const std::vector<QueryVerdict>& verdicts) {
    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
        if (verdicts[i].valid) valid.push_back(i);

    std::vector<std::size_t> parent(valid.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < valid.size(); ++a)
        for (std::size_t b = a + 1; b < valid.size(); ++b) {
            const auto& x = verdicts[valid[a]];
            const auto& y = verdicts[valid[b]];
            if ((x.hit_d1 && y.hit_d1) || (x.hit_d2 && y.hit_d2)) parent[find(b)] = find(a);
        }

    auto key = [&](std::size_t i) {
        const auto& c = verdicts[i].candidate;
        return std::make_tuple(text::code_point_count(c.text), c.origin == QueryOrigin::original_question_backup,
                               c.generation_rank, i);
    };
    std::vector<std::size_t> best(valid.size(), SIZE_MAX);
    for (std::size_t a = 0; a < valid.size(); ++a) {
        const std::size_t root = find(a);
        if (best[root] == SIZE_MAX || key(valid[a]) < key(best[root])) best[root] = valid[a];
    }
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < valid.size(); ++a)
        if (find(a) == a) keep.push_back(best[a]);
    std::sort(keep.begin(), keep.end());
    std::vector<QueryVerdict> out;
    out.reserve(keep.size());
    for (auto i : keep) out.push_back(verdicts[i]);
    return out;
}

bool answer_in_documents(std::string_view answer, const std::vector<DocId>& ids, const CorpusStore& store) {
    std::string joined;
    for (const auto& id : ids) {
        if (!joined.empty()) joined += ' ';
        joined += store.at(id).text;
    }
    return normalize_answer(joined).find(normalize_answer(answer)) != std::string::npos;
}

FinalizeResult finalize_instance(const QuestionDraft& draft, const HopDecision& decision,
                                 const std::vector<QueryVerdict>& verdicts, const CorpusStore& store,
                                 const VerifyConfig& config) {
    (void)config;
    if (decision.verdict != Verdict::keep) return {std::nullopt, DropReason::unanswerable};

    std::vector<const QueryVerdict*> survivors;
    const QueryVerdict* backup = nullptr;
    for (const auto& v : verdicts) {
        if (v.candidate.origin == QueryOrigin::original_question_backup) {
            if (!backup) backup = &v;
        } else if (v.valid) {
            survivors.push_back(&v);
        }
    }
    if (survivors.empty() && backup && backup->valid) survivors.push_back(backup);
    if (survivors.empty()) return {std::nullopt, DropReason::no_valid_query};

    std::vector<const QueryVerdict*> hops = {survivors.front()};
    const QueryVerdict& h1 = *survivors.front();
    if (decision.hops == HopCount::two) {
        if (!(h1.hit_d1 && h1.hit_d2)) {
            const bool need_d2 = h1.hit_d1;
            const auto it = std::find_if(survivors.begin() + 1, survivors.end(), [&](const QueryVerdict* v) {
                return need_d2 ? v->hit_d2 : v->hit_d1;
            });
            if (it == survivors.end()) return {std::nullopt, DropReason::coverage};
            hops.push_back(*it);
        }
    } else {
        const bool covers = (decision.answerable_in.first && h1.hit_d1) || (decision.answerable_in.second && h1.hit_d2);
        if (!covers) return {std::nullopt, DropReason::coverage};
    }

    if (draft.task == TaskFamily::mqa && draft.pair.relation == Relation::hyper &&
        !answer_in_documents(decision.final_answer, hops.back()->retrieved_ids, store))
        return {std::nullopt, DropReason::answer_not_retrieved};

    DataInstance inst;
    inst.id = draft.id;
    inst.task = draft.task;
    inst.relation = draft.pair.relation;
    inst.question = draft.text;
    inst.answer = decision.final_answer;
    inst.source_pair = {draft.pair.d1.id, draft.pair.d2.id};
    for (const auto* v : hops) inst.hops.push_back({v->candidate.text, v->retrieved_ids});
    return {std::move(inst), std::nullopt};
}

std::vector<std::string> validate_instance(const DataInstance& inst, const CorpusStore& store, const FlatIndex& index,
                                           const EmbeddingProvider& provider, const VerifyConfig& config) {
    std::vector<std::string> problems;
    auto fail = [&](std::string msg) { problems.push_back(inst.id + ": " + std::move(msg)); };

    if (inst.question.empty()) fail("empty question");
    if (inst.answer.empty()) fail("empty answer");
    if (inst.task == TaskFamily::fever &&
        std::find(fever_labels().begin(), fever_labels().end(), inst.answer) == fever_labels().end())
        fail("answer is not a fever label");
    if (inst.task == TaskFamily::fever && inst.relation == Relation::topic) fail("fever instance on a topic pair");
    if (inst.hops.empty() || inst.hops.size() > 2) fail("hop count " + std::to_string(inst.hops.size()));
    const auto& [d1, d2] = inst.source_pair;
    if (d1 == d2) fail("source pair repeats a document");
    if (!store.contains(d1) || !store.contains(d2)) {
        fail("source pair not in corpus");
        return problems;
    }

    bool covered1 = false, covered2 = false;
    for (std::size_t h = 0; h < inst.hops.size(); ++h) {
        const Hop& hop = inst.hops[h];
        const std::string where = "hop " + std::to_string(h + 1) + ": ";
        if (hop.retrieved.size() > static_cast<std::size_t>(config.k)) fail(where + "more than k retrieved");
        const bool h1 = std::find(hop.retrieved.begin(), hop.retrieved.end(), d1) != hop.retrieved.end();
        const bool h2 = std::find(hop.retrieved.begin(), hop.retrieved.end(), d2) != hop.retrieved.end();
        if (!h1 && !h2) fail(where + "query retrieves neither pair document");
        covered1 = covered1 || h1;
        covered2 = covered2 || h2;
        try {
            const auto vec = provider.embed({hop.query});
            std::vector<DocId> again;
            for (auto& s : index.search(vec.at(0), static_cast<std::size_t>(config.k))) again.push_back(s.doc_id);
            if (again != hop.retrieved) fail(where + "stored retrieval differs from a fresh search");
        } catch (const std::exception& e) {
            fail(where + "re-search failed: " + e.what());
        }
    }
    if (inst.hops.size() == 2 && !(covered1 && covered2)) fail("two hops do not cover both documents");
    if (inst.task == TaskFamily::mqa && inst.relation == Relation::hyper && !inst.hops.empty() &&
        !answer_in_documents(inst.answer, inst.hops.back().retrieved, store))
        fail("answer not found in last-hop documents");
    return problems;
}

}  // namespace hopsynth
