#pragma once

#include "util/dates.hpp"
#include "util/errors.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ilpg::graph {

enum class NodeLabel { Law, Article, Attachment, Government, Legislature };
enum class EdgeType {
    HAS_ART,
    HAS_ATTACHMENT,
    IN_PREAMBLE,
    CITATION,
    AMENDS,
    ABROGATES,
    INTRODUCES,
    UNDER_GOVERNMENT,
    IN_LEGISLATURE,
};

constexpr int kNodeLabelCount = 5;
constexpr int kEdgeTypeCount = 9;

const char* to_string(NodeLabel label);
const char* to_string(EdgeType type);
std::optional<NodeLabel> label_from_string(std::string_view name);
std::optional<EdgeType> type_from_string(std::string_view name);

// Property values: strings, 64-bit integers, booleans, string lists.
// Calendar dates are stored as ISO-8601 strings by convention; use
// get_date() to read them back as Date values.
using Value = std::variant<std::string, int64_t, bool, std::vector<std::string>>;
using PropertyMap = std::map<std::string, Value>;

std::optional<Date> get_date(const PropertyMap& props, const std::string& key);
std::optional<std::string> get_string(const PropertyMap& props, const std::string& key);
std::optional<int64_t> get_int(const PropertyMap& props, const std::string& key);
bool get_bool(const PropertyMap& props, const std::string& key, bool fallback = false);
std::vector<std::string> get_string_list(const PropertyMap& props, const std::string& key);

struct Node {
    std::string id;
    NodeLabel label = NodeLabel::Law;
    PropertyMap props;
};

// Parallel edges between the same (src, dst, type) are distinguished by seq.
struct EdgeKey {
    std::string src;
    std::string dst;
    EdgeType type = EdgeType::HAS_ART;
    int seq = 0;

    auto operator<=>(const EdgeKey&) const = default;
};

struct EdgeDraft {
    std::string src;
    std::string dst;
    EdgeType type = EdgeType::HAS_ART;
    PropertyMap props;
};

struct EdgeView {
    const EdgeKey* key = nullptr;
    const PropertyMap* props = nullptr;
};

enum class Direction { Out, In, Both };

struct Neighbor {
    EdgeKey edge;
    PropertyMap props;
    std::string node_id;
};

// One law's worth of structure: the law node, its articles/attachments,
// and the edges owned by the law (HAS_*, context). Reference edges are
// applied separately once all target laws exist.
struct LawSubgraph {
    Node law;
    std::vector<Node> elements;
    std::vector<EdgeDraft> edges;
};

struct ReplaceSummary {
    std::map<NodeLabel, int64_t> nodes_added;
    std::map<NodeLabel, int64_t> nodes_removed;
    std::map<EdgeType, int64_t> edges_added;
    std::map<EdgeType, int64_t> edges_removed;
    // Elements gone from the new parse but kept because other laws still
    // reference them.
    std::vector<std::string> retained_elements;

    void merge(const ReplaceSummary& other);
};

struct GraphStats {
    std::map<NodeLabel, int64_t> node_counts;
    // (label, type) -> (avg in-degree, avg out-degree); 0 when no nodes of
    // that label exist.
    std::map<std::pair<NodeLabel, EdgeType>, std::pair<double, double>> avg_degree;
    int64_t edge_count = 0;
};

struct PathResult {
    int distance = 0;
    std::vector<std::string> path;
};

// In-memory labeled property graph with adjacency and label indexes.
// Single-writer, multiple-reader contract: callers serialize mutations;
// reads may run concurrently with each other but not with a mutation.
class PropertyGraph {
  public:
    // Inserts or, when the id already exists under the same label,
    // replaces the node's properties. Idempotent for identical input.
    const std::string& upsert_node(const Node& node);

    // Node must be isolated.
    void remove_node(const std::string& id);

    bool has_node(const std::string& id) const;
    const Node* find_node(const std::string& id) const;
    const Node& node(const std::string& id) const;

    // Assigns the next free seq for (src, dst, type).
    EdgeKey add_edge(const EdgeDraft& draft);
    // Inserts with an explicit seq (dump reload); rejects duplicates.
    void add_edge_with_seq(const EdgeKey& key, PropertyMap props);
    void remove_edge(const EdgeKey& key);
    bool has_edge(const EdgeKey& key) const;
    const PropertyMap* edge_props(const EdgeKey& key) const;

    std::vector<Neighbor> neighbors(const std::string& id,
                                    std::optional<EdgeType> type = std::nullopt,
                                    Direction direction = Direction::Both) const;

    // Sorted ids of all nodes carrying the label.
    std::vector<std::string> node_ids(NodeLabel label) const;
    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }

    template <typename Fn>
    void for_each_node(Fn&& fn) const {
        for (const auto& [id, node] : nodes_) fn(node);
    }
    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (const auto& [key, props] : edges_) fn(key, props);
    }

    // Collapses element ids onto their parent laws: a Law maps to itself,
    // an Article/Attachment to the source of its unique HAS_* edge;
    // Government/Legislature ids are dropped.
    std::set<std::string> project_to_laws(const std::set<std::string>& ids) const;
    // Parent law of a single node id (same projection rule).
    std::optional<std::string> law_of(const std::string& id) const;

    // BFS over the undirected law-level projection restricted to the given
    // edge types. Ties between equal-length paths resolve to the
    // lexicographically smallest law-id sequence.
    std::optional<PathResult> shortest_path_laws(const std::string& from_law,
                                                 const std::string& to_law,
                                                 const std::set<EdgeType>& edge_types) const;

    // Removes the law's owned edges (HAS_*/context/reference out-edges and
    // preamble in-edges), rebuilds the law and its elements, and drops
    // vanished elements unless other laws still reference them.
    ReplaceSummary replace_law_subgraph(const std::string& law_id, const LawSubgraph& sg);

    GraphStats compute_stats() const;

    // Canonical serialization: one JSON record per node/edge, keys sorted,
    // nodes ordered by id then edges by (src, dst, type, seq).
    std::string to_jsonl() const;
    void to_jsonl(std::ostream& out) const;
    static PropertyGraph from_jsonl(std::istream& in);

    // SHA-256 over the canonical serialization; equal graphs hash equally
    // regardless of construction order.
    std::string snapshot_hash() const;

    // Referential-integrity / hierarchy-tree violations, empty when sound.
    std::vector<std::string> validate() const;

    void clear();

  private:
    using EdgeMap = std::map<EdgeKey, PropertyMap>;

    std::map<std::string, Node> nodes_;
    EdgeMap edges_;
    std::map<std::string, std::set<EdgeKey>> out_index_;
    std::map<std::string, std::set<EdgeKey>> in_index_;
    std::map<NodeLabel, std::set<std::string>> label_index_;

    int degree(const std::string& id) const;
    std::vector<EdgeKey> edges_out_of(const std::string& id,
                                      const std::set<EdgeType>& types) const;
    std::vector<EdgeKey> edges_into(const std::string& id,
                                    const std::set<EdgeType>& types) const;
};

} // namespace ilpg::graph
