#include "hopsynth/pipeline.h"

#include <optional>

#include "hopsynth/error.h"
#include "hopsynth/parallel.h"
#include "hopsynth/rng.h"

namespace hopsynth {

void PipelineReport::drop(DropReason r, std::size_t n) {
    std::lock_guard lock(mu_);
    drops[r] += n;
}

void PipelineReport::warn(std::string message) {
    std::lock_guard lock(mu_);
    warnings_.push_back(std::move(message));
}

std::vector<std::string> PipelineReport::warnings() const {
    std::lock_guard lock(mu_);
    return warnings_;
}

std::size_t PipelineReport::total_drops() const {
    std::size_t n = 0;
    for (const auto& [r, c] : drops) n += c;
    return n;
}

nlohmann::ordered_json PipelineReport::to_json() const {
    nlohmann::ordered_json j;
    j["documents"] = documents;
    j["pairs"] = pairs;
    j["pairs_skipped"] = pairs_skipped;
    j["no_candidates"] = no_candidates;
    j["drafts_in"] = drafts_in;
    j["emitted"] = emitted;
    nlohmann::ordered_json d;
    for (auto r : all_drop_reasons()) {
        auto it = drops.find(r);
        d[std::string(to_string(r))] = it == drops.end() ? 0 : it->second;
    }
    j["drops"] = d;
    j["warnings"] = warnings().size();
    return j;
}

namespace {

DocumentPair pair_of(const StageRecord& r, const CorpusStore& store) {
    return {store.at(r.d1), store.at(r.d2), r.relation};
}

SynthesisContext context_of(const PipelineServices& s, const PipelineSettings& settings) {
    return SynthesisContext{s.backend, settings.task, s.examples, settings.seed};
}

template <typename T>
std::vector<T> compact(std::vector<std::optional<T>>& slots) {
    std::vector<T> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

}  // namespace

std::vector<StageRecord> make_tuples(const CorpusStore& store, const PipelineSettings& settings,
                                     const EntityRecognizer& recognizer, PipelineReport& report) {
    std::vector<DocId> ids;
    for (const auto& [id, doc] : store.documents()) ids.push_back(id);
    report.documents = ids.size();

    struct Slot {
        std::vector<StageRecord> records;
        std::size_t pairs = 0, skipped = 0, no_candidates = 0;
    };
    std::vector<Slot> slots(ids.size());
    PairingConfig pc = settings.pairing;
    pc.rng_seed = settings.seed;

    parallel_for(ids.size(), settings.workers, [&](std::size_t i) {
        Slot& slot = slots[i];
        const auto pairs = sample_pairs(store, ids[i], pc);
        slot.pairs = pairs.size();
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const DocumentPair& pair = pairs[p];
            StageRecord r;
            r.id = ids[i] + "#" + std::to_string(p);
            r.task = settings.task;
            r.relation = pair.relation;
            r.d1 = pair.d1.id;
            r.d2 = pair.d2.id;
            Rng rng(derive_seed(settings.seed, r.id, "answer"));
            if (settings.task == TaskFamily::fever) {
                if (pair.relation != Relation::hyper) {
                    ++slot.skipped;
                    continue;
                }
                r.answer = fever_labels()[rng.below(fever_labels().size())];
                r.answer_source = AnswerSource::entity;
            } else {
                std::vector<std::string> entities;
                if (pair.relation == Relation::hyper) {
                    try {
                        for (auto& list : recognizer.recognize({pair.d1.text, pair.d2.text}))
                            for (auto& e : list) entities.push_back(std::move(e));
                    } catch (const std::exception& e) {
                        report.warn("entity recognizer failed for " + r.id + ": " + e.what());
                    }
                }
                try {
                    const AnswerCandidate a = pick_answer(answer_candidates(pair, entities), rng);
                    r.answer = a.text;
                    r.answer_source = a.source;
                } catch (const NoCandidates&) {
                    ++slot.no_candidates;
                    continue;
                }
            }
            slot.records.push_back(std::move(r));
        }
    });

    std::vector<StageRecord> out;
    for (auto& s : slots) {
        report.pairs += s.pairs;
        report.pairs_skipped += s.skipped;
        report.no_candidates += s.no_candidates;
        for (auto& r : s.records) out.push_back(std::move(r));
    }
    return out;
}

std::vector<StageRecord> load_tuples(const std::filesystem::path& path, const CorpusStore& store,
                                     const PipelineSettings& settings) {
    auto records = read_stage_file(path);
    for (auto& r : records) {
        if (!store.contains(r.d1) || !store.contains(r.d2))
            throw InvalidArgument("tuple " + r.id + " names a document missing from the corpus");
        if (!pair_is_consistent(store, pair_of(r, store)))
            throw InvalidArgument("tuple " + r.id + " is not a valid " + std::string(to_string(r.relation)) + " pair");
        if (r.task != settings.task)
            throw InvalidArgument("tuple " + r.id + " is for task " + std::string(to_string(r.task)));
        check_task_setting(question_task(r.task), r.relation);
    }
    return records;
}

std::vector<StageRecord> stage_questions(const std::vector<StageRecord>& tuples, const CorpusStore& store,
                                         const PipelineServices& services, const PipelineSettings& settings,
                                         PipelineReport& report) {
    report.drafts_in += tuples.size();
    const SynthesisContext ctx = context_of(services, settings);
    std::vector<std::optional<StageRecord>> slots(tuples.size());
    parallel_for(tuples.size(), settings.workers, [&](std::size_t i) {
        const StageRecord& t = tuples[i];
        const auto draft = generate_question(t.id, pair_of(t, store), t.answer, ctx);
        if (!draft) {
            report.drop(DropReason::empty_question);
            return;
        }
        std::string warning;
        const bool ok = entity_count_filter(*draft, services.recognizer, settings.filter, &warning);
        if (!warning.empty()) report.warn(warning);
        if (!ok) {
            report.drop(DropReason::entity_filter);
            return;
        }
        StageRecord r = t;
        r.question = draft->text;
        slots[i] = std::move(r);
    });
    return compact(slots);
}

std::vector<StageRecord> stage_answers(const std::vector<StageRecord>& drafts, const CorpusStore& store,
                                       const PipelineServices& services, const PipelineSettings& settings,
                                       PipelineReport& report) {
    const SynthesisContext ctx = context_of(services, settings);
    std::vector<std::optional<StageRecord>> slots(drafts.size());
    parallel_for(drafts.size(), settings.workers, [&](std::size_t i) {
        const StageRecord& d = drafts[i];
        if (!d.question) throw InvalidArgument("record " + d.id + " has no question");
        const DocumentPair pair = pair_of(d, store);
        const std::string& q = *d.question;
        StageRecord r = d;
        r.pred_both = answer_question(q, {pair.d1, pair.d2}, pair.relation, ctx, d.id, "both");
        r.pred_first = answer_question(q, {pair.d1}, pair.relation, ctx, d.id, "first");
        r.pred_second = answer_question(q, {pair.d2}, pair.relation, ctx, d.id, "second");
        const QuestionDraft draft{d.id, pair, d.task, q, d.answer};
        r.decision = classify_hops(draft, *r.pred_both, *r.pred_first, *r.pred_second, settings.filter);
        if (r.decision->verdict == Verdict::drop) {
            report.drop(DropReason::unanswerable);
            return;
        }
        slots[i] = std::move(r);
    });
    return compact(slots);
}

std::vector<StageRecord> stage_queries(const std::vector<StageRecord>& answered, const CorpusStore& store,
                                       const PipelineServices& services, const PipelineSettings& settings) {
    const SynthesisContext ctx = context_of(services, settings);
    std::vector<StageRecord> out(answered.size());
    parallel_for(answered.size(), settings.workers, [&](std::size_t i) {
        const StageRecord& a = answered[i];
        if (!a.question || !a.decision) throw InvalidArgument("record " + a.id + " has not been answered");
        out[i] = a;
        // Queries are conditioned on the final answer, which may be the
        // "both" prediction rather than the prepared one.
        out[i].candidates = generate_queries(a.id, pair_of(a, store), *a.question, a.decision->final_answer, ctx);
    });
    return out;
}

std::vector<DataInstance> stage_verify(const std::vector<StageRecord>& with_queries, const CorpusStore& store,
                                       const FlatIndex& index, const PipelineServices& services,
                                       const PipelineSettings& settings, PipelineReport& report) {
    std::vector<std::optional<DataInstance>> slots(with_queries.size());
    parallel_for(with_queries.size(), settings.workers, [&](std::size_t i) {
        const StageRecord& r = with_queries[i];
        if (!r.question || !r.decision || !r.candidates)
            throw InvalidArgument("record " + r.id + " has no query candidates");
        const DocumentPair pair = pair_of(r, store);
        std::vector<QueryVerdict> model;
        std::optional<QueryVerdict> backup;
        for (const auto& c : *r.candidates) {
            std::string warning;
            QueryVerdict v = verify_query(c, pair, index, services.embedder, settings.verify, &warning);
            if (!warning.empty()) report.warn(warning);
            if (c.origin == QueryOrigin::original_question_backup)
                backup = std::move(v);
            else
                model.push_back(std::move(v));
        }
        std::vector<QueryVerdict> verdicts = dedup_queries(model);
        if (backup) verdicts.push_back(std::move(*backup));
        const QuestionDraft draft{r.id, pair, r.task, *r.question, r.answer};
        FinalizeResult res = finalize_instance(draft, *r.decision, verdicts, store, settings.verify);
        if (res.reason) {
            report.drop(*res.reason);
            return;
        }
        slots[i] = std::move(res.instance);
    });
    auto out = compact(slots);
    report.emitted += out.size();
    return out;
}

std::vector<DataInstance> run_pipeline(const std::vector<StageRecord>& tuples, const CorpusStore& store,
                                       const FlatIndex& index, const PipelineServices& services,
                                       const PipelineSettings& settings, PipelineReport& report) {
    const auto drafts = stage_questions(tuples, store, services, settings, report);
    const auto answered = stage_answers(drafts, store, services, settings, report);
    const auto queried = stage_queries(answered, store, services, settings);
    return stage_verify(queried, store, index, services, settings, report);
}

}  // namespace hopsynth
