#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogmap/map.hpp"

namespace cogmap {

// Node cut set + the edges picked by a graph query (e.g. the skeleton).
struct Subgraph {
    std::vector<int> nodes;
    std::vector<TransitionEdge> edges;
};

struct TopologyReport {
    int scc_count = 0;
    int largest_scc_size = 0;
    std::vector<int> blue_nodes;
    std::vector<EdgeKey> red_edges;
    int skeleton_node_count = 0;
    int skeleton_edge_count = 0;
};

// Maximal strongly connected components of the edge graph. Singleton states
// with no cycles are singleton components, so the result partitions all
// states. Members sorted ascending, components ordered by smallest member.
std::vector<std::vector<int>> find_sccs(const CognitiveMap& map);

// Failure attractors: trust < 0.5 and visits strictly above the median visit
// count (lower middle value for even counts).
std::vector<int> blue_nodes(const CognitiveMap& map);

// Subgraph of edges whose success count reaches min_success, plus endpoints.
Subgraph skeleton(const CognitiveMap& map, std::int64_t min_success = 2);

// Top-k edges by success count (ties by source, then target id).
std::vector<EdgeKey> red_edges(const CognitiveMap& map, int top_k = 20);

TopologyReport analyze(const CognitiveMap& map, int red_k = 20, std::int64_t skeleton_min = 2);

nlohmann::json report_to_json(const TopologyReport& report);

enum class GraphFormat { kDot, kGraphml, kJson };

GraphFormat graph_format_from_string(std::string_view s);

void export_graph(const CognitiveMap& map, GraphFormat format, const std::filesystem::path& path);
void export_graph(const CognitiveMap& map, const Subgraph& sub, GraphFormat format,
                  const std::filesystem::path& path);

}  // namespace cogmap
