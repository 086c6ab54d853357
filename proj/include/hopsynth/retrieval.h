#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hopsynth/corpus.h"

namespace hopsynth {

struct EmbeddingVector {
    std::vector<float> values;

    std::size_t dim() const { return values.size(); }
    bool operator==(const EmbeddingVector&) const = default;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    // One vector per text, in order. Throws InvalidArgument on empty input.
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const = 0;
};

// Precomputed vectors keyed by exact text; JSONL of {"text": s, "vector": [f]}.
class FileEmbeddingProvider : public EmbeddingProvider {
public:
    explicit FileEmbeddingProvider(std::unordered_map<std::string, EmbeddingVector> table);
    static FileEmbeddingProvider load(const std::filesystem::path& path);

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override;

private:
    std::unordered_map<std::string, EmbeddingVector> table_;
};

// Signed feature hashing of lowercased content words, L2-normalized.
// Deterministic and dependency-free; meant for tests and demos.
class HashEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HashEmbeddingProvider(std::size_t dim = 256, std::uint64_t seed = 0);
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override;

private:
    std::size_t dim_;
    std::uint64_t seed_;
};

// Client for POST /v1/embeddings {"texts": [...]} -> {"vectors": [[...]]}.
std::unique_ptr<EmbeddingProvider> make_http_embedding_provider(const std::string& endpoint,
                                                                int timeout_seconds = 60);

struct ScoredDoc {
    DocId doc_id;
    float score = 0.0f;

    bool operator==(const ScoredDoc&) const = default;
};

// Float dot product with pairwise summation.
float dot(const float* a, const float* b, std::size_t n);

// Exact dense index; immutable after build, safe for concurrent search.
class FlatIndex {
public:
    FlatIndex() = default;

    std::size_t size() const { return doc_ids_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<DocId>& doc_ids() const { return doc_ids_; }
    const float* row(std::size_t i) const { return matrix_.data() + i * dim_; }

    // Top min(k, size) by descending score, ties by ascending doc id.
    std::vector<ScoredDoc> search(const EmbeddingVector& query, std::size_t k) const;

    friend FlatIndex build_flat_index(std::vector<DocId> doc_ids, const std::vector<EmbeddingVector>& vectors);

private:
    std::vector<DocId> doc_ids_;
    std::vector<float> matrix_;
    std::size_t dim_ = 0;
};

// Throws InvalidArgument on length or dimension mismatch, duplicate ids or
// non-finite values.
FlatIndex build_flat_index(std::vector<DocId> doc_ids, const std::vector<EmbeddingVector>& vectors);

// Embeds every document text (in id order) in batches.
FlatIndex index_corpus(const CorpusStore& store, const EmbeddingProvider& provider, std::size_t batch = 256);

}  // namespace hopsynth
