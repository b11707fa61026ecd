#pragma once

#include "context/context.hpp"
#include "graph/property_graph.hpp"

#include <vector>

namespace ilpg::ctx {

std::string government_node_id(const std::string& name);
std::string legislature_node_id(const std::string& name);

graph::Node government_node(const Government& g);
graph::Node legislature_node(const Legislature& l);

// One UNDER_GOVERNMENT plus one IN_LEGISLATURE edge when the law's
// publication date falls inside an interval of each list (closed bounds);
// empty otherwise, with `matched` reporting which case applied.
std::vector<graph::EdgeDraft> link_context(const graph::Node& law, const ContextDataset& ctx,
                                           bool* matched = nullptr);

} // namespace ilpg::ctx
