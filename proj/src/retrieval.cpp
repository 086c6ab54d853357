#include "hopsynth/retrieval.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "hopsynth/error.h"
#include "hopsynth/metrics.h"
#include "hopsynth/rng.h"
#include "text_util.h"

namespace hopsynth {

FileEmbeddingProvider::FileEmbeddingProvider(std::unordered_map<std::string, EmbeddingVector> table)
    : table_(std::move(table)) {}

FileEmbeddingProvider FileEmbeddingProvider::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read embeddings file '" + path.string() + "'");
    std::unordered_map<std::string, EmbeddingVector> table;
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            EmbeddingVector v{j.at("vector").get<std::vector<float>>()};
            if (v.values.empty()) throw ParseError("empty vector", lineno);
            if (dim && v.dim() != dim) throw ParseError("vector dimension differs from earlier records", lineno);
            dim = v.dim();
            table[j.at("text").get<std::string>()] = std::move(v);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return FileEmbeddingProvider(std::move(table));
}

std::vector<EmbeddingVector> FileEmbeddingProvider::embed(const std::vector<std::string>& texts) const {
    if (texts.empty()) throw InvalidArgument("embed: no texts");
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        auto it = table_.find(t);
        if (it == table_.end()) throw NotFound("no precomputed embedding for text '" + t.substr(0, 60) + "'");
        out.push_back(it->second);
    }
    return out;
}

HashEmbeddingProvider::HashEmbeddingProvider(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
    if (dim == 0) throw InvalidArgument("embedding dim must be >= 1");
}

namespace {

const std::set<std::string, std::less<>>& stopwords() {
    static const std::set<std::string, std::less<>> kWords = {
        "a",    "an",   "and",  "are", "as",    "at",   "be",   "by",   "for",  "from", "has", "he",
        "in",   "is",   "it",   "its", "of",    "on",   "or",   "she",  "that", "the",  "to",  "was",
        "were", "what", "which", "who", "with", "did",  "does", "do",   "how",  "his",  "her", "their"};
    return kWords;
}

bool has_word_char(const std::string& tok) {
    std::size_t pos = 0;
    while (pos < tok.size())
        if (text::is_word(text::next_code_point(tok, pos))) return true;
    return false;
}

}  // namespace

std::vector<EmbeddingVector> HashEmbeddingProvider::embed(const std::vector<std::string>& texts) const {
    if (texts.empty()) throw InvalidArgument("embed: no texts");
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        std::vector<double> acc(dim_, 0.0);
        for (const auto& raw : tokenize(t)) {
            std::string tok;
            std::size_t pos = 0;
            while (pos < raw.size()) text::append_utf8(tok, text::to_lower(text::next_code_point(raw, pos)));
            if (!has_word_char(tok) || stopwords().count(tok)) continue;
            const std::uint64_t h = mix64(text::fnv1a(tok) ^ seed_);
            acc[h % dim_] += (h >> 63) ? -1.0 : 1.0;
        }
        double norm = 0.0;
        for (double x : acc) norm += x * x;
        norm = std::sqrt(norm);
        EmbeddingVector v;
        v.values.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) v.values[i] = norm > 0 ? static_cast<float>(acc[i] / norm) : 0.0f;
        out.push_back(std::move(v));
    }
    return out;
}

float dot(const float* a, const float* b, std::size_t n) {
    if (n <= 8) {
        float s = 0.0f;
        for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
        return s;
    }
    const std::size_t half = n / 2;
    return dot(a, b, half) + dot(a + half, b + half, n - half);
}

FlatIndex build_flat_index(std::vector<DocId> doc_ids, const std::vector<EmbeddingVector>& vectors) {
    if (doc_ids.size() != vectors.size()) throw InvalidArgument("doc id and vector counts differ");
    FlatIndex index;
    if (!vectors.empty()) index.dim_ = vectors.front().dim();
    if (!vectors.empty() && index.dim_ == 0) throw InvalidArgument("zero-dimensional vectors");
    std::set<DocId> seen;
    index.matrix_.reserve(vectors.size() * index.dim_);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].dim() != index.dim_)
            throw InvalidArgument("dimension mismatch for '" + doc_ids[i] + "': " + std::to_string(vectors[i].dim()) +
                                  " vs " + std::to_string(index.dim_));
        if (!seen.insert(doc_ids[i]).second) throw InvalidArgument("duplicate doc id '" + doc_ids[i] + "'");
        for (float x : vectors[i].values)
            if (!std::isfinite(x)) throw InvalidArgument("non-finite value in vector for '" + doc_ids[i] + "'");
        index.matrix_.insert(index.matrix_.end(), vectors[i].values.begin(), vectors[i].values.end());
    }
    index.doc_ids_ = std::move(doc_ids);
    return index;
}

std::vector<ScoredDoc> FlatIndex::search(const EmbeddingVector& query, std::size_t k) const {
    if (k == 0) throw InvalidArgument("k must be >= 1");
    if (query.dim() != dim_ && size() > 0)
        throw InvalidArgument("query dimension " + std::to_string(query.dim()) + " does not match index dimension " +
                              std::to_string(dim_));
    std::vector<float> scores(size());
    for (std::size_t i = 0; i < size(); ++i) scores[i] = dot(row(i), query.values.data(), dim_);
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t take = std::min(k, size());
    auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return doc_ids_[a] < doc_ids_[b];
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
    std::vector<ScoredDoc> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back({doc_ids_[order[i]], scores[order[i]]});
    return out;
}

FlatIndex index_corpus(const CorpusStore& store, const EmbeddingProvider& provider, std::size_t batch) {
    std::vector<DocId> ids;
    std::vector<std::string> texts;
    for (const auto& [id, doc] : store.documents()) {
        ids.push_back(id);
        texts.push_back(doc.text);
    }
    std::vector<EmbeddingVector> vectors;
    vectors.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); i += batch) {
        std::vector<std::string> chunk(texts.begin() + static_cast<std::ptrdiff_t>(i),
                                       texts.begin() + static_cast<std::ptrdiff_t>(std::min(texts.size(), i + batch)));
        auto got = provider.embed(chunk);
        if (got.size() != chunk.size()) throw MalformedResponse("embedding provider returned a wrong vector count");
        for (auto& v : got) vectors.push_back(std::move(v));
    }
    return build_flat_index(std::move(ids), vectors);
}

}  // namespace hopsynth
