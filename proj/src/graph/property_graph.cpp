#include "graph/property_graph.hpp"

#include "util/digest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <sstream>

namespace ilpg::graph {

using nlohmann::json;

namespace {

const char* kLabelNames[kNodeLabelCount] = {"Law", "Article", "Attachment", "Government",
                                            "Legislature"};
const char* kTypeNames[kEdgeTypeCount] = {"HAS_ART",    "HAS_ATTACHMENT", "IN_PREAMBLE",
                                          "CITATION",   "AMENDS",         "ABROGATES",
                                          "INTRODUCES", "UNDER_GOVERNMENT", "IN_LEGISLATURE"};

json value_to_json(const Value& v) {
    return std::visit([](const auto& x) { return json(x); }, v);
}

Value value_from_json(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<int64_t>();
    if (j.is_array()) {
        std::vector<std::string> items;
        for (const auto& e : j) {
            if (!e.is_string())
                throw Error(ErrorCode::DataError, "list property entries must be strings");
            items.push_back(e.get<std::string>());
        }
        return items;
    }
    throw Error(ErrorCode::DataError, "unsupported property value type: " + j.dump());
}

json props_to_json(const PropertyMap& props) {
    json obj = json::object();
    for (const auto& [k, v] : props) obj[k] = value_to_json(v);
    return obj;
}

PropertyMap props_from_json(const json& obj) {
    PropertyMap props;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        props.emplace(it.key(), value_from_json(it.value()));
    return props;
}

const std::set<EdgeType> kLawOwnedOutTypes = {
    EdgeType::HAS_ART,    EdgeType::HAS_ATTACHMENT, EdgeType::UNDER_GOVERNMENT,
    EdgeType::IN_LEGISLATURE, EdgeType::CITATION,   EdgeType::AMENDS,
    EdgeType::ABROGATES,  EdgeType::INTRODUCES};

const std::set<EdgeType> kElementOwnedOutTypes = {EdgeType::CITATION, EdgeType::AMENDS,
                                                  EdgeType::ABROGATES, EdgeType::INTRODUCES};

} // namespace

const char* to_string(NodeLabel label) { return kLabelNames[static_cast<int>(label)]; }
const char* to_string(EdgeType type) { return kTypeNames[static_cast<int>(type)]; }

std::optional<NodeLabel> label_from_string(std::string_view name) {
    for (int i = 0; i < kNodeLabelCount; ++i)
        if (name == kLabelNames[i]) return static_cast<NodeLabel>(i);
    return std::nullopt;
}

std::optional<EdgeType> type_from_string(std::string_view name) {
    for (int i = 0; i < kEdgeTypeCount; ++i)
        if (name == kTypeNames[i]) return static_cast<EdgeType>(i);
    return std::nullopt;
}

std::optional<Date> get_date(const PropertyMap& props, const std::string& key) {
    auto it = props.find(key);
    if (it == props.end()) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second)) return Date::parse_iso(*s);
    return std::nullopt;
}

std::optional<std::string> get_string(const PropertyMap& props, const std::string& key) {
    auto it = props.find(key);
    if (it == props.end()) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    return std::nullopt;
}

std::optional<int64_t> get_int(const PropertyMap& props, const std::string& key) {
    auto it = props.find(key);
    if (it == props.end()) return std::nullopt;
    if (const auto* v = std::get_if<int64_t>(&it->second)) return *v;
    return std::nullopt;
}

bool get_bool(const PropertyMap& props, const std::string& key, bool fallback) {
    auto it = props.find(key);
    if (it == props.end()) return fallback;
    if (const auto* v = std::get_if<bool>(&it->second)) return *v;
    return fallback;
}

std::vector<std::string> get_string_list(const PropertyMap& props, const std::string& key) {
    auto it = props.find(key);
    if (it == props.end()) return {};
    if (const auto* v = std::get_if<std::vector<std::string>>(&it->second)) return *v;
    return {};
}

void ReplaceSummary::merge(const ReplaceSummary& other) {
    for (const auto& [k, v] : other.nodes_added) nodes_added[k] += v;
    for (const auto& [k, v] : other.nodes_removed) nodes_removed[k] += v;
    for (const auto& [k, v] : other.edges_added) edges_added[k] += v;
    for (const auto& [k, v] : other.edges_removed) edges_removed[k] += v;
    retained_elements.insert(retained_elements.end(), other.retained_elements.begin(),
                             other.retained_elements.end());
}

const std::string& PropertyGraph::upsert_node(const Node& node) {
    if (node.id.empty()) throw Error(ErrorCode::DataError, "node id must be non-empty");
    auto it = nodes_.find(node.id);
    if (it != nodes_.end()) {
        if (it->second.label != node.label)
            throw Error(ErrorCode::LabelConflict,
                        "node '" + node.id + "' already exists with label " +
                            to_string(it->second.label));
        it->second.props = node.props;
        return it->second.id;
    }
    auto [pos, _] = nodes_.emplace(node.id, node);
    label_index_[node.label].insert(node.id);
    return pos->second.id;
}

void PropertyGraph::remove_node(const std::string& id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error(ErrorCode::UnknownNode, "unknown node: " + id);
    if (degree(id) != 0)
        throw Error(ErrorCode::DataError, "cannot remove node with incident edges: " + id);
    label_index_[it->second.label].erase(id);
    out_index_.erase(id);
    in_index_.erase(id);
    nodes_.erase(it);
}

bool PropertyGraph::has_node(const std::string& id) const { return nodes_.count(id) != 0; }

const Node* PropertyGraph::find_node(const std::string& id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

const Node& PropertyGraph::node(const std::string& id) const {
    const Node* n = find_node(id);
    if (!n) throw Error(ErrorCode::UnknownNode, "unknown node: " + id);
    return *n;
}

EdgeKey PropertyGraph::add_edge(const EdgeDraft& draft) {
    if (!has_node(draft.src)) throw Error(ErrorCode::UnknownNode, "unknown node: " + draft.src);
    if (!has_node(draft.dst)) throw Error(ErrorCode::UnknownNode, "unknown node: " + draft.dst);
    int seq = 0;
    EdgeKey probe{draft.src, draft.dst, draft.type, 0};
    for (auto it = edges_.lower_bound(probe); it != edges_.end(); ++it) {
        const EdgeKey& k = it->first;
        if (k.src != draft.src || k.dst != draft.dst || k.type != draft.type) break;
        seq = k.seq + 1;
    }
    EdgeKey key{draft.src, draft.dst, draft.type, seq};
    edges_.emplace(key, draft.props);
    out_index_[draft.src].insert(key);
    in_index_[draft.dst].insert(key);
    return key;
}

void PropertyGraph::add_edge_with_seq(const EdgeKey& key, PropertyMap props) {
    if (!has_node(key.src)) throw Error(ErrorCode::UnknownNode, "unknown node: " + key.src);
    if (!has_node(key.dst)) throw Error(ErrorCode::UnknownNode, "unknown node: " + key.dst);
    if (edges_.count(key))
        throw Error(ErrorCode::DataError, "duplicate edge record: " + key.src + " -> " + key.dst);
    edges_.emplace(key, std::move(props));
    out_index_[key.src].insert(key);
    in_index_[key.dst].insert(key);
}

void PropertyGraph::remove_edge(const EdgeKey& key) {
    auto it = edges_.find(key);
    if (it == edges_.end()) throw Error(ErrorCode::DataError, "edge not found");
    out_index_[key.src].erase(key);
    in_index_[key.dst].erase(key);
    edges_.erase(it);
}

bool PropertyGraph::has_edge(const EdgeKey& key) const { return edges_.count(key) != 0; }

const PropertyMap* PropertyGraph::edge_props(const EdgeKey& key) const {
    auto it = edges_.find(key);
    return it == edges_.end() ? nullptr : &it->second;
}

std::vector<Neighbor> PropertyGraph::neighbors(const std::string& id,
                                               std::optional<EdgeType> type,
                                               Direction direction) const {
    if (!has_node(id)) throw Error(ErrorCode::UnknownNode, "unknown node: " + id);
    std::vector<Neighbor> out;
    auto visit = [&](const std::set<EdgeKey>* index, bool outgoing) {
        if (!index) return;
        for (const EdgeKey& key : *index) {
            if (type && key.type != *type) continue;
            out.push_back(Neighbor{key, edges_.at(key), outgoing ? key.dst : key.src});
        }
    };
    auto find_index = [](const std::map<std::string, std::set<EdgeKey>>& m,
                         const std::string& k) -> const std::set<EdgeKey>* {
        auto it = m.find(k);
        return it == m.end() ? nullptr : &it->second;
    };
    if (direction == Direction::Out || direction == Direction::Both)
        visit(find_index(out_index_, id), true);
    if (direction == Direction::In || direction == Direction::Both)
        visit(find_index(in_index_, id), false);
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        return std::tie(a.edge.type, a.node_id, a.edge.seq) <
               std::tie(b.edge.type, b.node_id, b.edge.seq);
    });
    return out;
}

std::vector<std::string> PropertyGraph::node_ids(NodeLabel label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::optional<std::string> PropertyGraph::law_of(const std::string& id) const {
    const Node& n = node(id);
    switch (n.label) {
        case NodeLabel::Law: return id;
        case NodeLabel::Article:
        case NodeLabel::Attachment: {
            auto it = in_index_.find(id);
            if (it != in_index_.end()) {
                for (const EdgeKey& key : it->second) {
                    if (key.type == EdgeType::HAS_ART || key.type == EdgeType::HAS_ATTACHMENT)
                        return key.src;
                }
            }
            throw Error(ErrorCode::OrphanElement, "element without parent law: " + id);
        }
        default: return std::nullopt;
    }
}

std::set<std::string> PropertyGraph::project_to_laws(const std::set<std::string>& ids) const {
    std::set<std::string> laws;
    for (const auto& id : ids) {
        if (auto law = law_of(id)) laws.insert(*law);
    }
    return laws;
}

std::optional<PathResult> PropertyGraph::shortest_path_laws(
    const std::string& from_law, const std::string& to_law,
    const std::set<EdgeType>& edge_types) const {
    if (node(from_law).label != NodeLabel::Law)
        throw Error(ErrorCode::UnknownNode, "not a law node: " + from_law);
    if (node(to_law).label != NodeLabel::Law)
        throw Error(ErrorCode::UnknownNode, "not a law node: " + to_law);
    if (from_law == to_law) return PathResult{0, {from_law}};

    std::map<std::string, std::set<std::string>> adjacency;
    for (const auto& [key, props] : edges_) {
        (void)props;
        if (!edge_types.count(key.type)) continue;
        auto a = law_of(key.src);
        auto b = law_of(key.dst);
        if (!a || !b || *a == *b) continue;
        adjacency[*a].insert(*b);
        adjacency[*b].insert(*a);
    }

    // distances from the target so a greedy forward walk can pick the
    // lexicographically smallest shortest path
    std::map<std::string, int> dist;
    std::deque<std::string> queue;
    dist[to_law] = 0;
    queue.push_back(to_law);
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = adjacency.find(cur);
        if (it == adjacency.end()) continue;
        for (const auto& next : it->second) {
            if (dist.count(next)) continue;
            dist[next] = dist[cur] + 1;
            queue.push_back(next);
        }
    }

    auto df = dist.find(from_law);
    if (df == dist.end()) return std::nullopt;

    PathResult result;
    result.distance = df->second;
    result.path.push_back(from_law);
    std::string cur = from_law;
    while (cur != to_law) {
        int want = dist.at(cur) - 1;
        const std::set<std::string>& nbrs = adjacency.at(cur);
        const std::string* pick = nullptr;
        for (const auto& n : nbrs) {
            auto dn = dist.find(n);
            if (dn != dist.end() && dn->second == want) {
                pick = &n;
                break; // set iteration is ordered, first hit is smallest
            }
        }
        if (!pick) throw Error(ErrorCode::DataError, "inconsistent BFS distances");
        cur = *pick;
        result.path.push_back(cur);
    }
    return result;
}

int PropertyGraph::degree(const std::string& id) const {
    int d = 0;
    if (auto it = out_index_.find(id); it != out_index_.end()) d += it->second.size();
    if (auto it = in_index_.find(id); it != in_index_.end()) d += it->second.size();
    return d;
}

std::vector<EdgeKey> PropertyGraph::edges_out_of(const std::string& id,
                                                 const std::set<EdgeType>& types) const {
    std::vector<EdgeKey> out;
    auto it = out_index_.find(id);
    if (it == out_index_.end()) return out;
    for (const EdgeKey& key : it->second)
        if (types.count(key.type)) out.push_back(key);
    return out;
}

std::vector<EdgeKey> PropertyGraph::edges_into(const std::string& id,
                                               const std::set<EdgeType>& types) const {
    std::vector<EdgeKey> out;
    auto it = in_index_.find(id);
    if (it == in_index_.end()) return out;
    for (const EdgeKey& key : it->second)
        if (types.count(key.type)) out.push_back(key);
    return out;
}

ReplaceSummary PropertyGraph::replace_law_subgraph(const std::string& law_id,
                                                   const LawSubgraph& sg) {
    ReplaceSummary summary;
    bool law_exists = has_node(law_id);
    if (!law_exists && sg.law.id.empty())
        throw Error(ErrorCode::UnknownLaw, "unknown law: " + law_id);
    if (law_exists && node(law_id).label != NodeLabel::Law)
        throw Error(ErrorCode::LabelConflict, "node '" + law_id + "' is not a Law");
    if (!sg.law.id.empty() && sg.law.id != law_id)
        throw Error(ErrorCode::DataError, "law id mismatch: " + sg.law.id + " vs " + law_id);

    // previously stored elements of this law
    std::vector<std::string> old_elements;
    if (law_exists) {
        for (const EdgeKey& key :
             edges_out_of(law_id, {EdgeType::HAS_ART, EdgeType::HAS_ATTACHMENT}))
            old_elements.push_back(key.dst);
    }

    auto drop = [&](const EdgeKey& key) {
        remove_edge(key);
        summary.edges_removed[key.type] += 1;
    };

    if (law_exists) {
        for (const EdgeKey& key : edges_out_of(law_id, kLawOwnedOutTypes)) drop(key);
        for (const EdgeKey& key : edges_into(law_id, {EdgeType::IN_PREAMBLE})) drop(key);
        for (const std::string& el : old_elements)
            for (const EdgeKey& key : edges_out_of(el, kElementOwnedOutTypes)) drop(key);
    }

    Node law_node = sg.law;
    if (law_node.id.empty()) law_node = node(law_id);
    law_node.label = NodeLabel::Law;
    if (!law_exists) summary.nodes_added[NodeLabel::Law] += 1;
    upsert_node(law_node);

    std::set<std::string> new_ids;
    for (const Node& el : sg.elements) new_ids.insert(el.id);

    for (const std::string& el : old_elements) {
        if (new_ids.count(el)) continue;
        if (degree(el) == 0) {
            NodeLabel label = node(el).label;
            remove_node(el);
            summary.nodes_removed[label] += 1;
        } else {
            // other laws still reference this element: keep it attached
            EdgeType t = node(el).label == NodeLabel::Attachment ? EdgeType::HAS_ATTACHMENT
                                                                 : EdgeType::HAS_ART;
            add_edge(EdgeDraft{law_id, el, t, {}});
            summary.edges_added[t] += 1;
            summary.retained_elements.push_back(el);
        }
    }

    for (const Node& el : sg.elements) {
        if (!has_node(el.id)) summary.nodes_added[el.label] += 1;
        upsert_node(el);
    }

    for (const EdgeDraft& draft : sg.edges) {
        add_edge(draft);
        summary.edges_added[draft.type] += 1;
    }
    return summary;
}

GraphStats PropertyGraph::compute_stats() const {
    GraphStats stats;
    for (int l = 0; l < kNodeLabelCount; ++l) {
        auto label = static_cast<NodeLabel>(l);
        auto it = label_index_.find(label);
        stats.node_counts[label] = it == label_index_.end() ? 0 : it->second.size();
    }
    std::map<std::pair<NodeLabel, EdgeType>, int64_t> in_totals, out_totals;
    for (const auto& [key, props] : edges_) {
        (void)props;
        out_totals[{nodes_.at(key.src).label, key.type}] += 1;
        in_totals[{nodes_.at(key.dst).label, key.type}] += 1;
    }
    for (int l = 0; l < kNodeLabelCount; ++l) {
        auto label = static_cast<NodeLabel>(l);
        int64_t n = stats.node_counts[label];
        for (int t = 0; t < kEdgeTypeCount; ++t) {
            auto type = static_cast<EdgeType>(t);
            double avg_in = 0.0, avg_out = 0.0;
            if (n > 0) {
                auto ii = in_totals.find({label, type});
                auto oi = out_totals.find({label, type});
                avg_in = ii == in_totals.end() ? 0.0 : static_cast<double>(ii->second) / n;
                avg_out = oi == out_totals.end() ? 0.0 : static_cast<double>(oi->second) / n;
            }
            stats.avg_degree[{label, type}] = {avg_in, avg_out};
        }
    }
    stats.edge_count = static_cast<int64_t>(edges_.size());
    return stats;
}

void PropertyGraph::to_jsonl(std::ostream& out) const {
    // nodes_ and edges_ are ordered maps; iteration order is the canonical
    // record order
    for (const auto& [id, node] : nodes_) {
        json rec;
        rec["kind"] = "node";
        rec["id"] = id;
        rec["label"] = to_string(node.label);
        rec["props"] = props_to_json(node.props);
        out << rec.dump() << '\n';
    }
    std::vector<const EdgeMap::value_type*> edge_rows;
    edge_rows.reserve(edges_.size());
    for (const auto& entry : edges_) edge_rows.push_back(&entry);
    std::sort(edge_rows.begin(), edge_rows.end(), [](const auto* a, const auto* b) {
        const EdgeKey& x = a->first;
        const EdgeKey& y = b->first;
        if (x.src != y.src) return x.src < y.src;
        if (x.dst != y.dst) return x.dst < y.dst;
        std::string_view tx = to_string(x.type), ty = to_string(y.type);
        if (tx != ty) return tx < ty;
        return x.seq < y.seq;
    });
    for (const auto* entry : edge_rows) {
        const EdgeKey& key = entry->first;
        json rec;
        rec["kind"] = "edge";
        rec["src"] = key.src;
        rec["dst"] = key.dst;
        rec["type"] = to_string(key.type);
        rec["seq"] = key.seq;
        rec["props"] = props_to_json(entry->second);
        out << rec.dump() << '\n';
    }
}

std::string PropertyGraph::to_jsonl() const {
    std::ostringstream out;
    to_jsonl(out);
    return out.str();
}

PropertyGraph PropertyGraph::from_jsonl(std::istream& in) {
    PropertyGraph g;
    std::vector<std::pair<EdgeKey, PropertyMap>> pending_edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::DataError,
                        "bad dump record at line " + std::to_string(lineno) + ": " + e.what());
        }
        std::string kind = rec.value("kind", "");
        if (kind == "node") {
            Node n;
            n.id = rec.at("id").get<std::string>();
            auto label = label_from_string(rec.at("label").get<std::string>());
            if (!label)
                throw Error(ErrorCode::DataError,
                            "unknown label in dump: " + rec.at("label").dump());
            n.label = *label;
            n.props = props_from_json(rec.at("props"));
            g.upsert_node(n);
        } else if (kind == "edge") {
            auto type = type_from_string(rec.at("type").get<std::string>());
            if (!type)
                throw Error(ErrorCode::DataError,
                            "unknown edge type in dump: " + rec.at("type").dump());
            EdgeKey key{rec.at("src").get<std::string>(), rec.at("dst").get<std::string>(),
                        *type, rec.at("seq").get<int>()};
            pending_edges.emplace_back(std::move(key), props_from_json(rec.at("props")));
        } else {
            throw Error(ErrorCode::DataError,
                        "bad dump record kind at line " + std::to_string(lineno));
        }
    }
    for (auto& [key, props] : pending_edges) g.add_edge_with_seq(key, std::move(props));
    return g;
}

std::string PropertyGraph::snapshot_hash() const { return sha256_hex(to_jsonl()); }

std::vector<std::string> PropertyGraph::validate() const {
    std::vector<std::string> problems;
    for (const auto& [key, props] : edges_) {
        (void)props;
        if (!has_node(key.src)) problems.push_back("edge source missing: " + key.src);
        if (!has_node(key.dst)) problems.push_back("edge destination missing: " + key.dst);
    }
    for (const auto& [id, node] : nodes_) {
        if (node.label != NodeLabel::Article && node.label != NodeLabel::Attachment) continue;
        int parents = 0;
        if (auto it = in_index_.find(id); it != in_index_.end()) {
            for (const EdgeKey& key : it->second)
                if (key.type == EdgeType::HAS_ART || key.type == EdgeType::HAS_ATTACHMENT)
                    ++parents;
        }
        if (parents != 1)
            problems.push_back("element " + id + " has " + std::to_string(parents) +
                               " hierarchy parents");
    }
    size_t indexed_out = 0, indexed_in = 0;
    for (const auto& [id, keys] : out_index_) indexed_out += keys.size();
    for (const auto& [id, keys] : in_index_) indexed_in += keys.size();
    if (indexed_out != edges_.size() || indexed_in != edges_.size())
        problems.push_back("adjacency index out of sync with edge set");
    return problems;
}

void PropertyGraph::clear() {
    nodes_.clear();
    edges_.clear();
    out_index_.clear();
    in_index_.clear();
    label_index_.clear();
}

} // namespace ilpg::graph
