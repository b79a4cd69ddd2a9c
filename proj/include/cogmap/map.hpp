#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cogmap/embedding.hpp"

namespace cogmap {

enum class TrustMode { kStatic, kEma };

std::string to_string(TrustMode mode);
TrustMode trust_mode_from_string(std::string_view s);

struct MapConfig {
    int dimension = 384;
    double tau_cluster = 0.75;
    TrustMode trust_mode = TrustMode::kStatic;
    double alpha = 0.9;  // EMA memory decay
};

// Centroid blend applied when a vector joins an existing state.
inline constexpr double kCentroidKeep = 0.95;
inline constexpr double kCentroidAdd = 0.05;

// EMA trust for unseen states starts at the maximal-uncertainty prior.
inline constexpr double kEmaInitialTrust = 0.5;

struct CognitiveState {
    int id = 0;
    std::int64_t visits = 0;
    std::int64_t successes = 0;
    double trust = 0.0;
    std::string exemplar;  // first step text assigned to this state
};

struct TransitionEdge {
    int src = 0;
    int dst = 0;
    std::int64_t successes = 0;
    std::int64_t total = 0;

    double success_rate() const { return total > 0 ? static_cast<double>(successes) / static_cast<double>(total) : 0.0; }
};

struct StepTrace {
    int state_id = -1;
    bool created_state = false;
    bool merged_with_previous = false;  // same state as the preceding step, no edge recorded
    double trust_after = 0.0;
    std::optional<double> entropy;
    std::string intervention;  // empty for plain ingestion
};

struct ReasoningTrace {
    std::vector<StepTrace> steps;
    bool outcome = false;
};

using EdgeKey = std::pair<int, int>;

// Directed graph over clustered reasoning states. Online nearest-neighbor
// clustering on unit embeddings, per-state trust statistics, per-edge
// success counts. Single writer; concurrent readers only on a frozen map.
class CognitiveMap {
public:
    explicit CognitiveMap(MapConfig cfg = {});

    const MapConfig& config() const { return cfg_; }
    int state_count() const { return static_cast<int>(states_.size()); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return states_.empty(); }

    const CognitiveState& state(int id) const;
    std::span<const double> centroid(int id) const;
    const std::vector<CognitiveState>& states() const { return states_; }
    const std::map<EdgeKey, TransitionEdge>& edges() const { return edges_; }
    const TransitionEdge* find_edge(int src, int dst) const;

    // Outgoing edges of a state, ordered by target id.
    std::vector<const TransitionEdge*> outgoing(int src) const;

    // Nearest-neighbor assignment: joins the best state when its cosine
    // similarity clears tau_cluster (ties to the lowest id, centroid blended
    // and renormalized, visit counted), otherwise creates a new state whose
    // centroid is v. Returns (state id, created).
    std::pair<int, bool> assign_state(const Embedding& v, std::string_view exemplar = {});

    // Nearest state by cosine regardless of threshold; nullopt on empty map.
    std::optional<int> nearest_state(const Embedding& v) const;

    // Adds or updates the directed edge. Self transitions are a no-op and
    // return nullptr (consecutive same-state steps carry no edge).
    const TransitionEdge* record_transition(int src, int dst, bool success);

    // Static mode: counts the outcome and recomputes successes/visits.
    // EMA mode: trust <- alpha*trust + (1-alpha)*[success]. Returns new trust.
    double update_trust(int id, bool success);

    // Embeds every step, assigns states in order, records cross-state edges
    // for consecutive steps, then applies the trajectory outcome to every
    // visited state (once per visit).
    ReasoningTrace ingest_trajectory(const std::vector<std::string>& steps, bool outcome,
                                     const EmbeddingProvider& provider);

    void save(const std::filesystem::path& path) const;
    static CognitiveMap load(const std::filesystem::path& path);

private:
    void check_state(int id) const;
    void refresh_static_trust(CognitiveState& s);

    MapConfig cfg_;
    std::vector<CognitiveState> states_;
    std::vector<double> centroids_;  // row-major state_count x dimension
    std::map<EdgeKey, TransitionEdge> edges_;
};

}  // namespace cogmap
