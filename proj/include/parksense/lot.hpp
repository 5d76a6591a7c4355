#ifndef PARKSENSE_LOT_HPP
#define PARKSENSE_LOT_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace parksense {

using NodeId = int;
using SpaceId = int;  // dense 1..N

inline constexpr int kScanRangeCap = 6;

enum class NodeKind { Space, Aisle, Entrance, Exit };

enum class RouteMode { OneWay, TwoWay };

struct LotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Node {
    NodeKind kind = NodeKind::Aisle;
    SpaceId space = 0;       // nonzero only for space nodes
    NodeId aisle_node = -1;  // for space nodes: the aisle node they attach to
};

struct Edge {
    NodeId from = -1;
    NodeId to = -1;
    double length = 1.0;
    bool two_way = true;  // one-way edges are traversable from->to only
};

/// Ordered aisle-node path; spaces are never part of a route.
struct Route {
    std::vector<NodeId> nodes;
    double length = 0.0;

    bool empty() const { return nodes.empty(); }
};

/// Node-and-edge model of a parking lot. Immutable once built; shared freely
/// across replications.
class LotGraph {
public:
    static LotGraph grid(int aisles, int spaces_per_aisle_side);
    static LotGraph from_json(const std::string& text);
    static LotGraph from_json_file(const std::string& path);

    std::string to_json() const;

    int space_count() const { return static_cast<int>(space_nodes_.size()); }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    NodeId entrance() const { return entrance_; }
    NodeId exit_node() const { return exit_; }

    const Node& node(NodeId id) const { return nodes_.at(static_cast<size_t>(id)); }
    const std::vector<Edge>& edges() const { return edges_; }

    NodeId space_node(SpaceId s) const { return space_nodes_.at(static_cast<size_t>(s - 1)); }
    /// Aisle node a car assigned to space `s` drives to.
    NodeId aisle_of_space(SpaceId s) const { return node(space_node(s)).aisle_node; }

    /// Spaces visible to a probe car positioned at `aisle` (at most 6).
    const std::vector<SpaceId>& scan_adjacency(NodeId aisle) const;

    /// Minimum-length path; ties broken by lexicographically smallest node
    /// sequence. Throws LotError if `to` is unreachable under `mode`.
    Route shortest_route(NodeId from, NodeId to, RouteMode mode) const;

    /// Entrance to the space's aisle node.
    Route arrival_route(SpaceId space, RouteMode mode) const;

    /// TwoWay: arrival route reversed. OneWay: shortest directed path from the
    /// space's aisle node to the exit.
    Route departure_route(SpaceId space, RouteMode mode) const;

    /// Distances from `from` to every node (+inf if unreachable).
    std::vector<double> distances_from(NodeId from, RouteMode mode) const;

private:
    LotGraph() = default;

    void index_edges();
    void validate() const;
    std::vector<double> distances_to(NodeId target, RouteMode mode) const;

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<NodeId> space_nodes_;                     // space id -> node id
    std::vector<std::vector<SpaceId>> scan_adjacency_;    // node id -> spaces
    std::vector<std::vector<std::pair<NodeId, double>>> out_;  // directed adjacency
    std::vector<std::vector<std::pair<NodeId, double>>> in_;
    NodeId entrance_ = -1;
    NodeId exit_ = -1;
};

}  // namespace parksense

#endif
