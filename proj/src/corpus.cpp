#include "hopsynth/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hopsynth/error.h"
#include "hopsynth/metrics.h"
#include "text_util.h"

namespace hopsynth {

using nlohmann::json;

KeywordTopicLabeler::KeywordTopicLabeler(std::vector<Bucket> buckets, std::string fallback)
    : buckets_(std::move(buckets)), fallback_(std::move(fallback)) {
    for (auto& b : buckets_)
        for (auto& kw : b.keywords) kw = normalize_answer(kw);
}

std::string KeywordTopicLabeler::label(const Document& doc) const {
    if (doc.topic && !doc.topic->empty()) return *doc.topic;
    if (buckets_.empty()) return fallback_;
    const std::string haystack = " " + normalize_answer(doc.title + " " + doc.text) + " ";
    std::size_t best = buckets_.size();
    std::size_t best_hits = 0;
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
        std::size_t hits = 0;
        for (const auto& kw : buckets_[i].keywords) {
            if (kw.empty()) continue;
            const std::string needle = " " + kw + " ";
            for (auto pos = haystack.find(needle); pos != std::string::npos;
                 pos = haystack.find(needle, pos + 1))
                ++hits;
        }
        if (hits > best_hits) {
            best_hits = hits;
            best = i;
        }
    }
    return best == buckets_.size() ? fallback_ : buckets_[best].label;
}

std::vector<KeywordTopicLabeler::Bucket> KeywordTopicLabeler::parse_buckets(std::string_view spec) {
    std::vector<Bucket> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto end = spec.find(';', start);
        if (end == std::string_view::npos) end = spec.size();
        auto item = text::trim(spec.substr(start, end - start));
        if (!item.empty()) {
            const auto colon = item.find(':');
            if (colon == std::string_view::npos)
                throw InvalidArgument("topic bucket without ':' in '" + std::string(item) + "'");
            Bucket b;
            b.label = std::string(text::trim(item.substr(0, colon)));
            auto rest = item.substr(colon + 1);
            std::size_t s = 0;
            while (s <= rest.size()) {
                auto e = rest.find(',', s);
                if (e == std::string_view::npos) e = rest.size();
                auto kw = text::trim(rest.substr(s, e - s));
                if (!kw.empty()) b.keywords.emplace_back(kw);
                s = e + 1;
            }
            out.push_back(std::move(b));
        }
        start = end + 1;
    }
    return out;
}

std::string truncate_text(std::string_view text, int max_tokens) {
    if (max_tokens < 1) throw InvalidArgument("max_tokens must be >= 1");
    const auto spans = token_spans(text);
    if (spans.size() <= static_cast<std::size_t>(max_tokens)) return std::string(text);
    return std::string(text.substr(0, spans[static_cast<std::size_t>(max_tokens) - 1].end));
}

const Document& CorpusStore::at(const DocId& id) const {
    auto it = documents_.find(id);
    if (it == documents_.end()) throw NotFound("unknown document id '" + id + "'");
    return it->second;
}

const Document* CorpusStore::find_by_title(std::string_view title) const {
    auto it = title_index_.find(std::string(title));
    return it == title_index_.end() ? nullptr : &documents_.at(it->second);
}

std::optional<std::string> CorpusStore::topic_of(const DocId& id) const {
    auto it = topic_of_.find(id);
    if (it == topic_of_.end()) return std::nullopt;
    return it->second;
}

bool CorpusStore::operator==(const CorpusStore& o) const {
    return documents_ == o.documents_ && title_index_ == o.title_index_ && link_graph_ == o.link_graph_ &&
           topic_clusters_ == o.topic_clusters_;
}

CorpusStore CorpusStore::build(std::vector<Document> docs, const CorpusConfig& config,
                               IngestReport* report) {
    CorpusStore store;
    for (auto& d : docs) {
        if (store.title_index_.count(d.title))
            throw ParseError("duplicate title '" + d.title + "'");
        if (store.documents_.count(d.id)) throw ParseError("duplicate id '" + d.id + "'");
        store.title_index_.emplace(d.title, d.id);
        store.documents_.emplace(d.id, std::move(d));
    }

    std::size_t dangling = 0;
    for (auto& [id, doc] : store.documents_) {
        auto& out = store.link_graph_[id];
        std::vector<Anchor> kept;
        for (auto& a : doc.anchors) {
            auto t = store.title_index_.find(a.target);
            if (t == store.title_index_.end()) {
                ++dangling;
                if (config.dangling_link_policy == DanglingLinkPolicy::keep_unresolved)
                    kept.push_back(std::move(a));
                continue;
            }
            if (t->second != id) {
                out.insert(t->second);
                store.backlinks_[t->second].insert(id);
            }
            kept.push_back(std::move(a));
        }
        doc.anchors = std::move(kept);
    }

    if (config.topic_labeler) {
        for (const auto& [id, doc] : store.documents_) {
            std::string label = config.topic_labeler->label(doc);
            store.topic_clusters_[label].insert(id);
            store.topic_of_.emplace(id, std::move(label));
        }
    }
    if (report) {
        report->documents = store.documents_.size();
        report->dangling_anchors += dangling;
    }
    return store;
}

namespace {

Document parse_record(const json& j, std::size_t line, const CorpusConfig& config, IngestReport& report) {
    auto need_string = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string())
            throw ParseError(std::string("missing or non-string field '") + key + "'", line);
        return it->get<std::string>();
    };
    Document d;
    d.id = need_string("id");
    d.title = need_string("title");
    const std::string source = need_string("text");
    if (d.id.empty()) throw ParseError("empty id", line);
    if (d.title.empty()) throw ParseError("empty title", line);
    d.text = truncate_text(source, config.max_doc_tokens);

    if (auto it = j.find("anchors"); it != j.end()) {
        if (!it->is_array()) throw ParseError("'anchors' must be an array", line);
        for (const auto& a : *it) {
            if (!a.is_object() || !a.contains("span") || !a.contains("target") || !a["span"].is_string() ||
                !a["target"].is_string())
                throw ParseError("anchor needs string 'span' and 'target'", line);
            Anchor anchor{a["span"].get<std::string>(), a["target"].get<std::string>()};
            if (anchor.span.empty() || source.find(anchor.span) == std::string::npos)
                throw ParseError("anchor span '" + anchor.span + "' does not occur in text", line);
            if (d.text.find(anchor.span) == std::string::npos) {
                ++report.truncated_anchors;
                continue;
            }
            d.anchors.push_back(std::move(anchor));
        }
    }
    if (auto it = j.find("topic"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError("'topic' must be a string", line);
        d.topic = it->get<std::string>();
    }
    return d;
}

CorpusStore ingest_stream(std::istream& in, const CorpusConfig& config, IngestReport* report) {
    if (config.max_doc_tokens < 1) throw InvalidArgument("max_doc_tokens must be >= 1");
    IngestReport local;
    std::vector<Document> docs;
    std::map<std::string, std::size_t> id_line, title_line;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
        }
        if (!j.is_object()) throw ParseError("record is not an object", lineno);
        Document d = parse_record(j, lineno, config, local);
        if (auto [it, fresh] = id_line.emplace(d.id, lineno); !fresh)
            throw ParseError("duplicate id '" + d.id + "' (lines " + std::to_string(it->second) + " and " +
                             std::to_string(lineno) + ")");
        if (auto [it, fresh] = title_line.emplace(d.title, lineno); !fresh)
            throw ParseError("duplicate title '" + d.title + "' (lines " + std::to_string(it->second) +
                             " and " + std::to_string(lineno) + ")");
        docs.push_back(std::move(d));
    }
    auto store = CorpusStore::build(std::move(docs), config, &local);
    if (report) *report = local;
    return store;
}

}  // namespace

CorpusStore ingest_corpus(const std::filesystem::path& path, const CorpusConfig& config,
                          IngestReport* report) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read corpus file '" + path.string() + "'");
    return ingest_stream(in, config, report);
}

CorpusStore ingest_corpus_text(std::string_view jsonl, const CorpusConfig& config, IngestReport* report) {
    std::istringstream in{std::string(jsonl)};
    return ingest_stream(in, config, report);
}

std::string corpus_to_jsonl(const CorpusStore& store) {
    std::string out;
    for (const auto& [id, doc] : store.documents()) {
        json j;
        j["id"] = doc.id;
        j["title"] = doc.title;
        j["text"] = doc.text;
        json anchors = json::array();
        for (const auto& a : doc.anchors) anchors.push_back({{"span", a.span}, {"target", a.target}});
        j["anchors"] = std::move(anchors);
        if (auto t = store.topic_of(id))
            j["topic"] = *t;
        else if (doc.topic)
            j["topic"] = *doc.topic;
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_corpus(const CorpusStore& store, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << corpus_to_jsonl(store);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<DocId> hyperlink_neighbors(const CorpusStore& store, const DocId& id) {
    if (!store.contains(id)) throw NotFound("unknown document id '" + id + "'");
    std::set<DocId> all;
    if (auto it = store.link_graph_.find(id); it != store.link_graph_.end())
        all.insert(it->second.begin(), it->second.end());
    if (auto it = store.backlinks_.find(id); it != store.backlinks_.end())
        all.insert(it->second.begin(), it->second.end());
    return {all.begin(), all.end()};
}

}  // namespace hopsynth
