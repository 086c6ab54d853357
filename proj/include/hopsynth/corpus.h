#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hopsynth {

using DocId = std::string;

struct Anchor {
    std::string span;    // surface text inside the document
    std::string target;  // title of the linked document

    bool operator==(const Anchor&) const = default;
};

struct Document {
    DocId id;
    std::string title;
    std::string text;  // truncated to CorpusConfig::max_doc_tokens
    std::vector<Anchor> anchors;
    std::optional<std::string> topic;

    bool operator==(const Document&) const = default;
};

// Assigns every document to exactly one topic cluster.
class TopicLabeler {
public:
    virtual ~TopicLabeler() = default;
    virtual std::string label(const Document& doc) const = 0;
};

// Uses the document's own `topic` field when present, otherwise the keyword
// bucket with the most hits in the lowercased title and text (ties go to the
// earlier bucket); documents with no hits land in `fallback`.
class KeywordTopicLabeler : public TopicLabeler {
public:
    struct Bucket {
        std::string label;
        std::vector<std::string> keywords;
    };

    explicit KeywordTopicLabeler(std::vector<Bucket> buckets = {}, std::string fallback = "other");
    std::string label(const Document& doc) const override;

    // Parses "label:kw1,kw2;label2:kw3".
    static std::vector<Bucket> parse_buckets(std::string_view spec);

private:
    std::vector<Bucket> buckets_;
    std::string fallback_;
};

enum class DanglingLinkPolicy { drop, keep_unresolved };

struct CorpusConfig {
    int max_doc_tokens = 100;
    DanglingLinkPolicy dangling_link_policy = DanglingLinkPolicy::drop;
    // Null disables topic clustering.
    std::shared_ptr<const TopicLabeler> topic_labeler;
};

struct IngestReport {
    std::size_t documents = 0;
    std::size_t dangling_anchors = 0;   // target title not in the corpus
    std::size_t truncated_anchors = 0;  // span fell outside the truncated text
};

// Immutable after construction; safe for concurrent reads.
class CorpusStore {
public:
    CorpusStore() = default;

    const std::map<DocId, Document>& documents() const { return documents_; }
    const std::map<std::string, DocId>& title_index() const { return title_index_; }
    const std::map<DocId, std::set<DocId>>& link_graph() const { return link_graph_; }
    const std::map<std::string, std::set<DocId>>& topic_clusters() const { return topic_clusters_; }

    std::size_t size() const { return documents_.size(); }
    bool contains(const DocId& id) const { return documents_.count(id) != 0; }
    const Document& at(const DocId& id) const;
    const Document* find_by_title(std::string_view title) const;

    // Cluster label of a document, if clustering is enabled.
    std::optional<std::string> topic_of(const DocId& id) const;

    bool operator==(const CorpusStore& other) const;

    // Builds the derived indexes. Throws ParseError on duplicate id/title.
    static CorpusStore build(std::vector<Document> docs, const CorpusConfig& config,
                             IngestReport* report = nullptr);

private:
    std::map<DocId, Document> documents_;
    std::map<std::string, DocId> title_index_;
    std::map<DocId, std::set<DocId>> link_graph_;
    std::map<DocId, std::set<DocId>> backlinks_;
    std::map<std::string, std::set<DocId>> topic_clusters_;
    std::map<DocId, std::string> topic_of_;

    friend std::vector<DocId> hyperlink_neighbors(const CorpusStore&, const DocId&);
};

// Prefix of `text` holding at most max_tokens tokens, original spacing kept.
std::string truncate_text(std::string_view text, int max_tokens);

CorpusStore ingest_corpus(const std::filesystem::path& path, const CorpusConfig& config,
                          IngestReport* report = nullptr);

// Same as ingest_corpus but over an in-memory JSONL buffer.
CorpusStore ingest_corpus_text(std::string_view jsonl, const CorpusConfig& config,
                               IngestReport* report = nullptr);

// Writes the store back in the corpus input format, ordered by id. The `topic`
// field carries the assigned cluster label when clustering is enabled.
void write_corpus(const CorpusStore& store, const std::filesystem::path& path);
std::string corpus_to_jsonl(const CorpusStore& store);

// Outbound and inbound neighbors, deduplicated, sorted by id.
std::vector<DocId> hyperlink_neighbors(const CorpusStore& store, const DocId& id);

}  // namespace hopsynth
