#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cogmap/common.hpp"

namespace cogmap {

// Unit-norm semantic vector. Normalization happens at construction; all
// entries are checked finite.
class Embedding {
public:
    Embedding() = default;
    explicit Embedding(std::vector<double> raw);

    const std::vector<double>& values() const { return values_; }
    std::span<const double> span() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

// u.v / (|u||v|); for unit vectors this is the dot product.
double cosine(const Embedding& u, const Embedding& v);
double cosine(std::span<const double> u, std::span<const double> v);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    virtual int dimension() const = 0;

    // Embeds a batch of texts. Each text must be non-empty after trimming.
    virtual std::vector<Embedding> embed_batch(const std::vector<std::string>& texts) const = 0;

    Embedding embed(const std::string& text) const;
};

// Deterministic offline embedder: the text bytes and the dimension fully
// determine the vector. Distinct texts land nearly orthogonal, so they stay
// below any clustering threshold while repeated texts match exactly.
class StubEmbedder final : public EmbeddingProvider {
public:
    explicit StubEmbedder(int dimension = 384);

    int dimension() const override { return dimension_; }
    std::vector<Embedding> embed_batch(const std::vector<std::string>& texts) const override;

    Embedding embed_text(const std::string& text) const;

private:
    int dimension_;
};

// Client for a JSON-over-HTTP embedding service:
//   POST <base>/embed  {"texts": [...]}  ->  {"embeddings": [[...], ...]}
// Requests are chunked to max_batch texts per call. A non-2xx reply raises
// TransportError carrying the status; a wrong-length vector raises
// DimensionError.
class HttpEmbedder final : public EmbeddingProvider {
public:
    HttpEmbedder(std::string base_url, int dimension, std::string bearer_token = "",
                 int max_batch = 64, int timeout_seconds = 30);
    ~HttpEmbedder() override;

    int dimension() const override { return dimension_; }
    std::vector<Embedding> embed_batch(const std::vector<std::string>& texts) const override;

private:
    std::string base_url_;
    int dimension_;
    std::string bearer_token_;
    int max_batch_;
    int timeout_seconds_;
};

}  // namespace cogmap
