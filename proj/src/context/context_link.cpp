#include "context/context_link.hpp"

namespace ilpg::ctx {

std::string government_node_id(const std::string& name) { return "government:" + name; }
std::string legislature_node_id(const std::string& name) { return "legislature:" + name; }

graph::Node government_node(const Government& g) {
    graph::Node n;
    n.id = government_node_id(g.name);
    n.label = graph::NodeLabel::Government;
    n.props["name"] = g.name;
    n.props["start_date"] = g.start.to_iso();
    n.props["end_date"] = g.end.to_iso();
    return n;
}

graph::Node legislature_node(const Legislature& l) {
    graph::Node n;
    n.id = legislature_node_id(l.name);
    n.label = graph::NodeLabel::Legislature;
    n.props["name"] = l.name;
    n.props["start_date"] = l.start.to_iso();
    n.props["end_date"] = l.end.to_iso();
    return n;
}

std::vector<graph::EdgeDraft> link_context(const graph::Node& law, const ContextDataset& ctx,
                                           bool* matched) {
    std::vector<graph::EdgeDraft> edges;
    auto date = graph::get_date(law.props, "publication_date");
    if (matched) *matched = false;
    if (!date) return edges;
    const Government* gov = ctx.government_at(*date);
    const Legislature* leg = ctx.legislature_at(*date);
    if (!gov || !leg) return edges;
    if (matched) *matched = true;
    edges.push_back({law.id, government_node_id(gov->name), graph::EdgeType::UNDER_GOVERNMENT, {}});
    edges.push_back({law.id, legislature_node_id(leg->name), graph::EdgeType::IN_LEGISLATURE, {}});
    return edges;
}

} // namespace ilpg::ctx
