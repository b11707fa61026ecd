#pragma once

#include "akn/document.hpp"
#include "config.hpp"
#include "context/context.hpp"
#include "graph/property_graph.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ilpg::etl {

struct ResolvedReference {
    std::string source_id;
    std::string target_id;
    graph::EdgeType edge_type = graph::EdgeType::CITATION;
    graph::PropertyMap props; // mod_type?, paragraph?, partial?
};

struct DanglingReference {
    std::string source_id;
    std::string target_expr;
};

// Nodes resolution wants materialized before its edges can be applied:
// whitelisted unknown laws and introduced (Latin-suffix) articles.
struct StubRequest {
    graph::Node node;
    std::optional<graph::EdgeDraft> hierarchy_edge; // HAS_ART / HAS_ATTACHMENT
};

struct ResolveResult {
    std::vector<ResolvedReference> resolved;
    std::vector<DanglingReference> dangling;
    std::vector<StubRequest> stubs;
    int64_t fragment_misses = 0; // known law, unknown fragment
};

struct IngestionReport {
    int64_t files_seen = 0;
    int64_t files_skipped = 0;
    int64_t laws_processed = 0;
    std::map<graph::NodeLabel, int64_t> nodes_added;
    std::map<graph::NodeLabel, int64_t> nodes_removed;
    std::map<graph::EdgeType, int64_t> edges_added;
    std::map<graph::EdgeType, int64_t> edges_removed;
    std::vector<DanglingReference> dangling;
    std::map<std::string, int64_t> quality_flags; // QualityCode name -> count
    std::vector<std::pair<std::string, std::string>> file_errors; // (file, message)
    std::vector<std::string> context_link_misses; // law ids outside every interval
    int64_t multi_destination_mods = 0;

    int64_t net_nodes() const;
    int64_t net_edges() const;
    nlohmann::json to_json() const;
};

// Law node with metadata, element counts, domain classes, and the
// country-specific flags (constitutional act type, simplification decree).
graph::Node build_law_node(const akn::AknDocument& doc, const ctx::ContextDataset& context,
                           const Config& config);

// The law's structural slice: law node, article/attachment nodes, HAS_*
// edges in document order, context edges.
graph::LawSubgraph law_subgraph(const akn::AknDocument& doc, const ctx::ContextDataset& context,
                                const Config& config, bool* context_matched = nullptr);

// Maps every raw reference to exactly one resolved edge or one dangling
// entry. `known_ids` must contain the current global id set plus this
// document's own element ids.
ResolveResult resolve_references(const akn::AknDocument& doc,
                                 const std::set<std::string>& known_ids, const Config& config);

// Parses every AKN file under input_dir (publication date >= since when
// given) and applies structure for all laws, then references for all laws,
// in sorted akn_id order. Per-file failures are reported, never fatal.
IngestionReport ingest_corpus(graph::PropertyGraph& g, const ctx::ContextDataset& context,
                              const Config& config, const std::string& input_dir,
                              std::optional<Date> since = std::nullopt);

// Applies one parsed document to the graph (structure + references against
// the current id set). Used by ingest_corpus and direct single-file loads.
void apply_document(graph::PropertyGraph& g, const akn::AknDocument& doc,
                    const ctx::ContextDataset& context, const Config& config,
                    IngestionReport& report);

} // namespace ilpg::etl
