#include "cogmap/map.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cogmap/kernels.hpp"

namespace cogmap {

namespace {
constexpr int kMapFileVersion = 1;
}

std::string to_string(TrustMode mode) {
    return mode == TrustMode::kStatic ? "static" : "ema";
}

TrustMode trust_mode_from_string(std::string_view s) {
    if (s == "static") return TrustMode::kStatic;
    if (s == "ema") return TrustMode::kEma;
    throw ConfigError("unknown trust mode: " + std::string(s));
}

CognitiveMap::CognitiveMap(MapConfig cfg) : cfg_(cfg) {
    if (cfg_.dimension <= 0) throw ConfigError("map dimension must be positive");
    if (cfg_.tau_cluster < -1.0 || cfg_.tau_cluster > 1.0) {
        throw ConfigError("tau_cluster must lie in [-1, 1]");
    }
    if (cfg_.alpha < 0.0 || cfg_.alpha > 1.0) throw ConfigError("alpha must lie in [0, 1]");
}

void CognitiveMap::check_state(int id) const {
    if (id < 0 || id >= state_count()) throw UnknownStateError(id);
}

const CognitiveState& CognitiveMap::state(int id) const {
    check_state(id);
    return states_[static_cast<std::size_t>(id)];
}

std::span<const double> CognitiveMap::centroid(int id) const {
    check_state(id);
    auto d = static_cast<std::size_t>(cfg_.dimension);
    return {centroids_.data() + static_cast<std::size_t>(id) * d, d};
}

const TransitionEdge* CognitiveMap::find_edge(int src, int dst) const {
    auto it = edges_.find({src, dst});
    return it == edges_.end() ? nullptr : &it->second;
}

std::vector<const TransitionEdge*> CognitiveMap::outgoing(int src) const {
    check_state(src);
    std::vector<const TransitionEdge*> out;
    for (auto it = edges_.lower_bound({src, 0}); it != edges_.end() && it->first.first == src;
         ++it) {
        out.push_back(&it->second);
    }
    return out;
}

void CognitiveMap::refresh_static_trust(CognitiveState& s) {
    if (cfg_.trust_mode == TrustMode::kStatic && s.visits > 0) {
        s.trust = static_cast<double>(s.successes) / static_cast<double>(s.visits);
    }
}

std::pair<int, bool> CognitiveMap::assign_state(const Embedding& v, std::string_view exemplar) {
    auto d = static_cast<std::size_t>(cfg_.dimension);
    if (v.size() != d) throw DimensionError(d, v.size());

    if (!states_.empty()) {
        auto best = kernels::argmax_dot(centroids_.data(), states_.size(), d, v.values().data());
        if (best.value >= cfg_.tau_cluster) {
            auto id = static_cast<int>(best.index);
            double* mu = centroids_.data() + best.index * d;
            double sq = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                mu[k] = kCentroidKeep * mu[k] + kCentroidAdd * v[k];
                sq += mu[k] * mu[k];
            }
            double inv = 1.0 / std::sqrt(sq);
            for (std::size_t k = 0; k < d; ++k) mu[k] *= inv;
            auto& s = states_[best.index];
            s.visits += 1;
            refresh_static_trust(s);
            return {id, false};
        }
    }

    CognitiveState s;
    s.id = state_count();
    s.visits = 1;
    s.successes = 0;
    s.trust = cfg_.trust_mode == TrustMode::kEma ? kEmaInitialTrust : 0.0;
    s.exemplar = std::string(exemplar);
    centroids_.insert(centroids_.end(), v.values().begin(), v.values().end());
    states_.push_back(std::move(s));
    return {states_.back().id, true};
}

std::optional<int> CognitiveMap::nearest_state(const Embedding& v) const {
    auto d = static_cast<std::size_t>(cfg_.dimension);
    if (v.size() != d) throw DimensionError(d, v.size());
    if (states_.empty()) return std::nullopt;
    auto best = kernels::argmax_dot(centroids_.data(), states_.size(), d, v.values().data());
    return static_cast<int>(best.index);
}

const TransitionEdge* CognitiveMap::record_transition(int src, int dst, bool success) {
    check_state(src);
    check_state(dst);
    if (src == dst) return nullptr;
    auto [it, created] = edges_.try_emplace({src, dst}, TransitionEdge{src, dst, 0, 0});
    it->second.total += 1;
    if (success) it->second.successes += 1;
    return &it->second;
}

double CognitiveMap::update_trust(int id, bool success) {
    check_state(id);
    auto& s = states_[static_cast<std::size_t>(id)];
    if (success) s.successes += 1;
    if (cfg_.trust_mode == TrustMode::kStatic) {
        refresh_static_trust(s);
    } else {
        s.trust = cfg_.alpha * s.trust + (1.0 - cfg_.alpha) * (success ? 1.0 : 0.0);
    }
    return s.trust;
}

ReasoningTrace CognitiveMap::ingest_trajectory(const std::vector<std::string>& steps, bool outcome,
                                               const EmbeddingProvider& provider) {
    if (steps.empty()) throw Error("trajectory must contain at least one step");

    auto embedded = provider.embed_batch(steps);
    ReasoningTrace trace;
    trace.outcome = outcome;
    trace.steps.resize(steps.size());

    int prev = -1;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        auto [id, created] = assign_state(embedded[i], steps[i]);
        trace.steps[i].state_id = id;
        trace.steps[i].created_state = created;
        if (prev >= 0) {
            if (id == prev) {
                trace.steps[i].merged_with_previous = true;
            } else {
                record_transition(prev, id, outcome);
            }
        }
        prev = id;
    }

    for (std::size_t i = 0; i < steps.size(); ++i) {
        trace.steps[i].trust_after = update_trust(trace.steps[i].state_id, outcome);
    }
    return trace;
}

namespace {

nlohmann::json map_to_json(const CognitiveMap& m) {
    nlohmann::json j;
    j["version"] = kMapFileVersion;
    j["dimension"] = m.config().dimension;
    j["tau_cluster"] = m.config().tau_cluster;
    j["trust_mode"] = to_string(m.config().trust_mode);
    j["alpha"] = m.config().alpha;
    auto states = nlohmann::json::array();
    for (const auto& s : m.states()) {
        nlohmann::json js;
        js["id"] = s.id;
        auto c = m.centroid(s.id);
        js["centroid"] = std::vector<double>(c.begin(), c.end());
        js["visits"] = s.visits;
        js["successes"] = s.successes;
        js["trust"] = s.trust;
        js["exemplar"] = s.exemplar;
        states.push_back(std::move(js));
    }
    j["states"] = std::move(states);
    auto edges = nlohmann::json::array();
    for (const auto& [key, e] : m.edges()) {
        edges.push_back({{"src", e.src}, {"dst", e.dst}, {"success", e.successes}, {"total", e.total}});
    }
    j["edges"] = std::move(edges);
    return j;
}

}  // namespace

void CognitiveMap::save(const std::filesystem::path& path) const {
    nlohmann::json j = map_to_json(*this);
    j["checksum"] = to_hex(fnv1a64(j.dump()));
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing map file: " + path.string());
}

CognitiveMap CognitiveMap::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open map file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid map JSON in " + path.string() + ": " + e.what());
    }

    if (!j.contains("version") || !j["version"].is_number_integer()) {
        throw SchemaError("map file missing integer 'version'");
    }
    if (j["version"].get<int>() != kMapFileVersion) {
        throw SchemaError("unsupported map file version " + std::to_string(j["version"].get<int>()) +
                          " (expected " + std::to_string(kMapFileVersion) + ")");
    }
    if (!j.contains("checksum") || !j["checksum"].is_string()) {
        throw ChecksumError("map file missing checksum");
    }
    std::string stored = j["checksum"].get<std::string>();
    j.erase("checksum");
    if (to_hex(fnv1a64(j.dump())) != stored) {
        throw ChecksumError("map file checksum mismatch (file corrupted?)");
    }

    MapConfig cfg;
    cfg.dimension = j.at("dimension").get<int>();
    cfg.tau_cluster = j.at("tau_cluster").get<double>();
    cfg.trust_mode = trust_mode_from_string(j.at("trust_mode").get<std::string>());
    cfg.alpha = j.at("alpha").get<double>();

    CognitiveMap m(cfg);
    auto d = static_cast<std::size_t>(cfg.dimension);
    const auto& states = j.at("states");
    m.states_.reserve(states.size());
    m.centroids_.reserve(states.size() * d);
    int expected_id = 0;
    for (const auto& js : states) {
        CognitiveState s;
        s.id = js.at("id").get<int>();
        if (s.id != expected_id++) throw SchemaError("state ids must be dense from 0");
        auto raw = js.at("centroid").get<std::vector<double>>();
        if (raw.size() != d) throw SchemaError("centroid length does not match dimension");
        s.visits = js.at("visits").get<std::int64_t>();
        s.successes = js.at("successes").get<std::int64_t>();
        s.trust = js.at("trust").get<double>();
        s.exemplar = js.at("exemplar").get<std::string>();
        m.centroids_.insert(m.centroids_.end(), raw.begin(), raw.end());
        m.states_.push_back(std::move(s));
    }
    for (const auto& je : j.at("edges")) {
        TransitionEdge e;
        e.src = je.at("src").get<int>();
        e.dst = je.at("dst").get<int>();
        e.successes = je.at("success").get<std::int64_t>();
        e.total = je.at("total").get<std::int64_t>();
        if (e.src < 0 || e.src >= m.state_count() || e.dst < 0 || e.dst >= m.state_count()) {
            throw SchemaError("edge endpoint references unknown state");
        }
        m.edges_.emplace(EdgeKey{e.src, e.dst}, e);
    }
    return m;
}

}  // namespace cogmap
