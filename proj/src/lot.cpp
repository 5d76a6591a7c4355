#include "parksense/lot.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

namespace parksense {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void LotGraph::index_edges() {
    out_.assign(nodes_.size(), {});
    in_.assign(nodes_.size(), {});
    for (const Edge& e : edges_) {
        out_[static_cast<size_t>(e.from)].emplace_back(e.to, e.length);
        in_[static_cast<size_t>(e.to)].emplace_back(e.from, e.length);
        if (e.two_way) {
            out_[static_cast<size_t>(e.to)].emplace_back(e.from, e.length);
            in_[static_cast<size_t>(e.from)].emplace_back(e.to, e.length);
        }
    }
    if (scan_adjacency_.size() < nodes_.size()) scan_adjacency_.resize(nodes_.size());
}

const std::vector<SpaceId>& LotGraph::scan_adjacency(NodeId aisle) const {
    return scan_adjacency_.at(static_cast<size_t>(aisle));
}

LotGraph LotGraph::grid(int aisles, int spaces_per_aisle_side) {
    if (aisles < 1 || spaces_per_aisle_side < 1)
        throw LotError("grid lot requires aisles >= 1 and spaces_per_aisle_side >= 1");

    LotGraph lot;
    const int rows = spaces_per_aisle_side;

    // Aisle lanes run top to bottom; lane heads are chained left to right as
    // the top perimeter, lane tails as the bottom perimeter. One-way flow is
    // entrance -> right/down -> exit.
    std::vector<std::vector<NodeId>> lane(static_cast<size_t>(aisles));
    for (int a = 0; a < aisles; ++a) {
        for (int r = 0; r < rows; ++r) {
            lane[static_cast<size_t>(a)].push_back(static_cast<NodeId>(lot.nodes_.size()));
            lot.nodes_.push_back(Node{NodeKind::Aisle, 0, -1});
        }
    }
    lot.entrance_ = static_cast<NodeId>(lot.nodes_.size());
    lot.nodes_.push_back(Node{NodeKind::Entrance, 0, -1});
    lot.exit_ = static_cast<NodeId>(lot.nodes_.size());
    lot.nodes_.push_back(Node{NodeKind::Exit, 0, -1});

    auto one_way = [&](NodeId u, NodeId v) { lot.edges_.push_back(Edge{u, v, 1.0, false}); };

    one_way(lot.entrance_, lane[0][0]);
    for (int a = 0; a + 1 < aisles; ++a) {
        one_way(lane[static_cast<size_t>(a)][0], lane[static_cast<size_t>(a + 1)][0]);
        one_way(lane[static_cast<size_t>(a)][static_cast<size_t>(rows - 1)],
                lane[static_cast<size_t>(a + 1)][static_cast<size_t>(rows - 1)]);
    }
    for (int a = 0; a < aisles; ++a)
        for (int r = 0; r + 1 < rows; ++r)
            one_way(lane[static_cast<size_t>(a)][static_cast<size_t>(r)],
                    lane[static_cast<size_t>(a)][static_cast<size_t>(r + 1)]);
    one_way(lane[static_cast<size_t>(aisles - 1)][static_cast<size_t>(rows - 1)], lot.exit_);

    // Two spaces per aisle node, one on each side.
    lot.scan_adjacency_.assign(lot.nodes_.size() + static_cast<size_t>(2 * aisles * rows), {});
    for (int a = 0; a < aisles; ++a) {
        for (int r = 0; r < rows; ++r) {
            NodeId at = lane[static_cast<size_t>(a)][static_cast<size_t>(r)];
            for (int side = 0; side < 2; ++side) {
                SpaceId sid = static_cast<SpaceId>(lot.space_nodes_.size() + 1);
                NodeId sn = static_cast<NodeId>(lot.nodes_.size());
                lot.nodes_.push_back(Node{NodeKind::Space, sid, at});
                lot.space_nodes_.push_back(sn);
            }
        }
    }

    // A probe car at an aisle node sees the spaces of that node and its
    // neighbors within the same lane: up to 6.
    auto spaces_at = [&](NodeId n) {
        std::vector<SpaceId> out;
        for (SpaceId s = 1; s <= lot.space_count(); ++s)
            if (lot.node(lot.space_nodes_[static_cast<size_t>(s - 1)]).aisle_node == n)
                out.push_back(s);
        return out;
    };
    for (int a = 0; a < aisles; ++a) {
        for (int r = 0; r < rows; ++r) {
            NodeId at = lane[static_cast<size_t>(a)][static_cast<size_t>(r)];
            std::vector<SpaceId> vis;
            for (int dr : {-1, 0, 1}) {
                int rr = r + dr;
                if (rr < 0 || rr >= rows) continue;
                auto sp = spaces_at(lane[static_cast<size_t>(a)][static_cast<size_t>(rr)]);
                vis.insert(vis.end(), sp.begin(), sp.end());
            }
            std::sort(vis.begin(), vis.end());
            lot.scan_adjacency_[static_cast<size_t>(at)] = std::move(vis);
        }
    }

    lot.index_edges();
    lot.validate();
    return lot;
}

void LotGraph::validate() const {
    for (size_t v = 0; v < scan_adjacency_.size(); ++v) {
        if (scan_adjacency_[v].size() > kScanRangeCap)
            throw LotError("scan range exceeded at node " + std::to_string(v) +
                           ": scan list larger than 6");
        for (SpaceId s : scan_adjacency_[v])
            if (s < 1 || s > space_count())
                throw LotError("scan list at node " + std::to_string(v) +
                               " references unknown space " + std::to_string(s));
    }
    for (SpaceId s = 1; s <= space_count(); ++s) {
        NodeId sn = space_nodes_[static_cast<size_t>(s - 1)];
        if (node(sn).aisle_node < 0 || node(sn).aisle_node >= node_count())
            throw LotError("space " + std::to_string(s) + " has no aisle node");
    }
}

std::vector<double> LotGraph::distances_from(NodeId from, RouteMode mode) const {
    std::vector<double> dist(nodes_.size(), kInf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<size_t>(from)] = 0.0;
    pq.emplace(0.0, from);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        auto relax = [&](NodeId v, double w) {
            if (d + w < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = d + w;
                pq.emplace(d + w, v);
            }
        };
        for (auto [v, w] : out_[static_cast<size_t>(u)]) relax(v, w);
        if (mode == RouteMode::TwoWay)
            for (auto [v, w] : in_[static_cast<size_t>(u)]) relax(v, w);
    }
    return dist;
}

std::vector<double> LotGraph::distances_to(NodeId target, RouteMode mode) const {
    std::vector<double> dist(nodes_.size(), kInf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<size_t>(target)] = 0.0;
    pq.emplace(0.0, target);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        auto relax = [&](NodeId v, double w) {
            if (d + w < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = d + w;
                pq.emplace(d + w, v);
            }
        };
        for (auto [v, w] : in_[static_cast<size_t>(u)]) relax(v, w);
        if (mode == RouteMode::TwoWay)
            for (auto [v, w] : out_[static_cast<size_t>(u)]) relax(v, w);
    }
    return dist;
}

Route LotGraph::shortest_route(NodeId from, NodeId to, RouteMode mode) const {
    if (from < 0 || from >= node_count() || to < 0 || to >= node_count())
        throw LotError("shortest_route: node id out of range");
    auto dist = distances_to(to, mode);
    if (dist[static_cast<size_t>(from)] == kInf)
        throw LotError("no route from " + std::to_string(from) + " to " + std::to_string(to));

    // Walk forward, always taking the smallest-id neighbor that stays on a
    // shortest path; this yields the lexicographically smallest sequence.
    Route route;
    NodeId cur = from;
    route.nodes.push_back(cur);
    while (cur != to) {
        NodeId best = -1;
        double best_w = 0.0;
        auto consider = [&](NodeId v, double w) {
            if (dist[static_cast<size_t>(v)] + w == dist[static_cast<size_t>(cur)] &&
                (best < 0 || v < best)) {
                best = v;
                best_w = w;
            }
        };
        for (auto [v, w] : out_[static_cast<size_t>(cur)]) consider(v, w);
        if (mode == RouteMode::TwoWay)
            for (auto [v, w] : in_[static_cast<size_t>(cur)]) consider(v, w);
        route.nodes.push_back(best);
        route.length += best_w;
        cur = best;
    }
    return route;
}

Route LotGraph::arrival_route(SpaceId space, RouteMode mode) const {
    return shortest_route(entrance_, aisle_of_space(space), mode);
}

Route LotGraph::departure_route(SpaceId space, RouteMode mode) const {
    if (mode == RouteMode::TwoWay) {
        Route r = arrival_route(space, mode);
        std::reverse(r.nodes.begin(), r.nodes.end());
        return r;
    }
    return shortest_route(aisle_of_space(space), exit_, mode);
}

std::string LotGraph::to_json() const {
    nlohmann::json j;
    j["entrance"] = entrance_;
    j["exit"] = exit_;
    j["nodes"] = nlohmann::json::array();
    for (NodeId id = 0; id < node_count(); ++id) {
        const Node& n = nodes_[static_cast<size_t>(id)];
        nlohmann::json jn{{"id", id}};
        switch (n.kind) {
            case NodeKind::Space:
                jn["kind"] = "space";
                jn["space"] = n.space;
                jn["aisle"] = n.aisle_node;
                break;
            case NodeKind::Aisle: jn["kind"] = "aisle"; break;
            case NodeKind::Entrance: jn["kind"] = "entrance"; break;
            case NodeKind::Exit: jn["kind"] = "exit"; break;
        }
        j["nodes"].push_back(jn);
    }
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : edges_)
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"length", e.length},
                              {"two_way", e.two_way}});
    j["scan_adjacency"] = nlohmann::json::object();
    for (size_t v = 0; v < scan_adjacency_.size(); ++v)
        if (!scan_adjacency_[v].empty())
            j["scan_adjacency"][std::to_string(v)] = scan_adjacency_[v];
    return j.dump(2);
}

LotGraph LotGraph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LotError(std::string("lot document is not valid JSON: ") + e.what());
    }
    for (const char* key : {"nodes", "edges", "scan_adjacency", "entrance", "exit"})
        if (!j.contains(key)) throw LotError(std::string("lot document missing key '") + key + "'");

    LotGraph lot;
    lot.nodes_.resize(j["nodes"].size());
    std::vector<bool> seen(lot.nodes_.size(), false);
    int max_space = 0;
    for (const auto& jn : j["nodes"]) {
        NodeId id = jn.at("id").get<NodeId>();
        if (id < 0 || id >= lot.node_count() || seen[static_cast<size_t>(id)])
            throw LotError("bad or duplicate node id " + std::to_string(id));
        seen[static_cast<size_t>(id)] = true;
        std::string kind = jn.at("kind").get<std::string>();
        Node n;
        if (kind == "space") {
            n.kind = NodeKind::Space;
            n.space = jn.at("space").get<SpaceId>();
            n.aisle_node = jn.at("aisle").get<NodeId>();
            max_space = std::max(max_space, n.space);
        } else if (kind == "aisle") {
            n.kind = NodeKind::Aisle;
        } else if (kind == "entrance") {
            n.kind = NodeKind::Entrance;
            lot.entrance_ = id;
        } else if (kind == "exit") {
            n.kind = NodeKind::Exit;
            lot.exit_ = id;
        } else {
            throw LotError("unknown node kind '" + kind + "' at node " + std::to_string(id));
        }
        lot.nodes_[static_cast<size_t>(id)] = n;
    }
    if (lot.entrance_ < 0) throw LotError("lot document has no entrance node");
    if (lot.exit_ < 0) throw LotError("lot document has no exit node");

    lot.space_nodes_.assign(static_cast<size_t>(max_space), -1);
    for (NodeId id = 0; id < lot.node_count(); ++id) {
        const Node& n = lot.nodes_[static_cast<size_t>(id)];
        if (n.kind != NodeKind::Space) continue;
        if (n.space < 1 || n.space > max_space || lot.space_nodes_[static_cast<size_t>(n.space - 1)] >= 0)
            throw LotError("space ids must be dense 1..N; bad space " + std::to_string(n.space));
        if (n.aisle_node < 0 || n.aisle_node >= lot.node_count())
            throw LotError("space " + std::to_string(n.space) + " references unknown aisle node " +
                           std::to_string(n.aisle_node));
        lot.space_nodes_[static_cast<size_t>(n.space - 1)] = id;
    }
    for (SpaceId s = 1; s <= max_space; ++s)
        if (lot.space_nodes_[static_cast<size_t>(s - 1)] < 0)
            throw LotError("space ids must be dense 1..N; missing space " + std::to_string(s));

    for (const auto& je : j["edges"]) {
        Edge e;
        e.from = je.at("from").get<NodeId>();
        e.to = je.at("to").get<NodeId>();
        e.length = je.value("length", 1.0);
        e.two_way = je.value("two_way", true);
        if (e.from < 0 || e.from >= lot.node_count() || e.to < 0 || e.to >= lot.node_count())
            throw LotError("edge references unknown node: " + std::to_string(e.from) + " -> " +
                           std::to_string(e.to));
        lot.edges_.push_back(e);
    }

    lot.scan_adjacency_.assign(lot.nodes_.size(), {});
    for (auto it = j["scan_adjacency"].begin(); it != j["scan_adjacency"].end(); ++it) {
        NodeId v = std::stoi(it.key());
        if (v < 0 || v >= lot.node_count())
            throw LotError("scan_adjacency references unknown node " + it.key());
        auto spaces = it.value().get<std::vector<SpaceId>>();
        if (spaces.size() > kScanRangeCap)
            throw LotError("scan range exceeded at node " + it.key() +
                           ": scan list larger than 6");
        lot.scan_adjacency_[static_cast<size_t>(v)] = std::move(spaces);
    }

    lot.index_edges();
    lot.validate();
    return lot;
}

LotGraph LotGraph::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LotError("cannot open lot file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace parksense
