#include "cogmap/embedding.hpp"

#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace cogmap {

Embedding::Embedding(std::vector<double> raw) : values_(std::move(raw)) {
    if (values_.empty()) throw Error("embedding must not be empty");
    double sq = 0.0;
    for (double x : values_) {
        if (!std::isfinite(x)) throw Error("embedding contains a non-finite entry");
        sq += x * x;
    }
    if (sq <= 0.0) throw Error("embedding has zero norm");
    double inv = 1.0 / std::sqrt(sq);
    for (double& x : values_) x *= inv;
}

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DimensionError(u.size(), v.size());
    if (u.empty()) throw Error("cosine of empty vectors");
    double uv = 0.0, uu = 0.0, vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uv += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

double cosine(const Embedding& u, const Embedding& v) { return cosine(u.span(), v.span()); }

Embedding EmbeddingProvider::embed(const std::string& text) const {
    auto out = embed_batch({text});
    return out.at(0);
}

namespace {
void check_texts(const std::vector<std::string>& texts) {
    for (const auto& t : texts) {
        if (trim(t).empty()) throw EmptyTextError();
    }
}
}  // namespace

StubEmbedder::StubEmbedder(int dimension) : dimension_(dimension) {
    if (dimension <= 0) throw ConfigError("embedding dimension must be positive");
}

Embedding StubEmbedder::embed_text(const std::string& text) const {
    if (trim(text).empty()) throw EmptyTextError();
    std::uint64_t seed = fnv1a64(text);
    seed ^= 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(dimension_);
    SplitMix64 rng(seed);
    std::vector<double> raw(static_cast<std::size_t>(dimension_));
    for (double& x : raw) x = rng.uniform(-1.0, 1.0);
    return Embedding(std::move(raw));
}

std::vector<Embedding> StubEmbedder::embed_batch(const std::vector<std::string>& texts) const {
    check_texts(texts);
    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_text(t));
    return out;
}

HttpEmbedder::HttpEmbedder(std::string base_url, int dimension, std::string bearer_token,
                           int max_batch, int timeout_seconds)
    : base_url_(std::move(base_url)),
      dimension_(dimension),
      bearer_token_(std::move(bearer_token)),
      max_batch_(max_batch),
      timeout_seconds_(timeout_seconds) {
    if (dimension_ <= 0) throw ConfigError("embedding dimension must be positive");
    if (max_batch_ <= 0) throw ConfigError("max_batch must be positive");
}

HttpEmbedder::~HttpEmbedder() = default;

std::vector<Embedding> HttpEmbedder::embed_batch(const std::vector<std::string>& texts) const {
    check_texts(texts);
    std::vector<Embedding> out;
    out.reserve(texts.size());

    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    httplib::Headers headers;
    if (!bearer_token_.empty()) headers.emplace("Authorization", "Bearer " + bearer_token_);

    for (std::size_t off = 0; off < texts.size(); off += static_cast<std::size_t>(max_batch_)) {
        std::size_t end = std::min(texts.size(), off + static_cast<std::size_t>(max_batch_));
        nlohmann::json body;
        body["texts"] = std::vector<std::string>(texts.begin() + static_cast<long>(off),
                                                 texts.begin() + static_cast<long>(end));
        auto res = client.Post("/embed", headers, body.dump(), "application/json");
        if (!res) {
            throw TransportError("embedding service unreachable at " + base_url_, 0, true);
        }
        if (res->status < 200 || res->status >= 300) {
            bool retryable = res->status >= 500 || res->status == 429;
            throw TransportError("embedding service error", res->status, retryable);
        }
        nlohmann::json reply;
        try {
            reply = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw TransportError(std::string("embedding service returned invalid JSON: ") +
                                     e.what(),
                                 res->status, false);
        }
        if (!reply.contains("embeddings") || !reply["embeddings"].is_array()) {
            throw TransportError("embedding reply missing 'embeddings' array", res->status, false);
        }
        for (const auto& vec : reply["embeddings"]) {
            std::vector<double> raw = vec.get<std::vector<double>>();
            if (raw.size() != static_cast<std::size_t>(dimension_)) {
                throw DimensionError(static_cast<std::size_t>(dimension_), raw.size());
            }
            out.emplace_back(std::move(raw));
        }
    }
    if (out.size() != texts.size()) {
        throw TransportError("embedding reply count does not match request", 200, false);
    }
    return out;
}

}  // namespace cogmap
