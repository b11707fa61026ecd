#include "etl/pipeline.hpp"

#include "akn/parser.hpp"
#include "context/context_link.hpp"
#include "util/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace ilpg::etl {

namespace fs = std::filesystem;
using nlohmann::json;
using graph::EdgeType;
using graph::NodeLabel;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

graph::Node article_node(const std::string& law_id, const akn::ArticleUnit& article) {
    graph::Node n;
    n.id = law_id + "#art_" + article.number;
    n.label = NodeLabel::Article;
    n.props["number"] = article.number;
    if (article.epigraph) n.props["epigraph"] = *article.epigraph;
    return n;
}

graph::Node attachment_node(const std::string& law_id, const akn::AttachmentUnit& att) {
    graph::Node n;
    n.id = law_id + "#" + att.fragment();
    n.label = NodeLabel::Attachment;
    n.props["kind"] = std::string(akn::to_string(att.kind));
    n.props["ordinal"] = static_cast<int64_t>(att.ordinal);
    n.props["is_tabular"] = att.is_tabular;
    if (att.heading) n.props["heading"] = *att.heading;
    return n;
}

graph::Node stub_law_node(const std::string& law_iri, const Config& config) {
    graph::Node n;
    n.id = law_iri;
    n.label = NodeLabel::Law;
    n.props["akn_id"] = law_iri;
    n.props["title"] = std::string{};
    n.props["doc_type"] = std::string{};
    n.props["n_articles"] = int64_t{0};
    n.props["n_attachments"] = int64_t{0};
    n.props["constitutional"] = false;
    n.props["domains"] = std::vector<std::string>{};
    n.props["simplification_decree"] = config.is_simplification(law_iri);
    n.props["stub"] = true;
    return n;
}

StubRequest element_stub(const std::string& law_iri, const akn::TargetExpr& t) {
    StubRequest req;
    if (t.is_article) {
        req.node.id = law_iri + "#art_" + t.article_number;
        req.node.label = NodeLabel::Article;
        req.node.props["number"] = t.article_number;
        req.node.props["stub"] = true;
        req.hierarchy_edge =
            graph::EdgeDraft{law_iri, req.node.id, EdgeType::HAS_ART, {}};
    } else {
        req.node.id = law_iri + "#" + t.fragment;
        req.node.label = NodeLabel::Attachment;
        auto space = t.fragment.find(' ');
        std::string kind_name = t.fragment.substr(0, space);
        req.node.props["kind"] = kind_name;
        req.node.props["ordinal"] =
            static_cast<int64_t>(std::atoi(t.fragment.c_str() + space + 1));
        req.node.props["is_tabular"] = kind_name == "Table";
        req.node.props["stub"] = true;
        req.hierarchy_edge =
            graph::EdgeDraft{law_iri, req.node.id, EdgeType::HAS_ATTACHMENT, {}};
    }
    return req;
}

} // namespace

int64_t IngestionReport::net_nodes() const {
    int64_t net = 0;
    for (const auto& [k, v] : nodes_added) net += v;
    for (const auto& [k, v] : nodes_removed) net -= v;
    return net;
}

int64_t IngestionReport::net_edges() const {
    int64_t net = 0;
    for (const auto& [k, v] : edges_added) net += v;
    for (const auto& [k, v] : edges_removed) net -= v;
    return net;
}

json IngestionReport::to_json() const {
    json j;
    j["files_seen"] = files_seen;
    j["files_skipped"] = files_skipped;
    j["laws_processed"] = laws_processed;
    auto label_counts = [](const std::map<NodeLabel, int64_t>& m) {
        json obj = json::object();
        for (const auto& [k, v] : m) obj[graph::to_string(k)] = v;
        return obj;
    };
    auto type_counts = [](const std::map<EdgeType, int64_t>& m) {
        json obj = json::object();
        for (const auto& [k, v] : m) obj[graph::to_string(k)] = v;
        return obj;
    };
    j["nodes_added"] = label_counts(nodes_added);
    j["nodes_removed"] = label_counts(nodes_removed);
    j["edges_added"] = type_counts(edges_added);
    j["edges_removed"] = type_counts(edges_removed);
    json dang = json::array();
    for (const auto& d : dangling) dang.push_back({{"source", d.source_id}, {"target", d.target_expr}});
    j["dangling_references"] = dang;
    j["quality_flags"] = quality_flags;
    json errs = json::array();
    for (const auto& [file, msg] : file_errors) errs.push_back({{"file", file}, {"error", msg}});
    j["file_errors"] = errs;
    j["context_link_misses"] = context_link_misses;
    j["multi_destination_mods"] = multi_destination_mods;
    return j;
}

graph::Node build_law_node(const akn::AknDocument& doc, const ctx::ContextDataset& context,
                           const Config& config) {
    graph::Node n;
    n.id = doc.akn_id;
    n.label = NodeLabel::Law;
    n.props["akn_id"] = doc.akn_id;
    n.props["title"] = doc.title;
    n.props["doc_type"] = doc.doc_type;
    if (doc.publication_date) n.props["publication_date"] = doc.publication_date->to_iso();
    if (doc.in_force_date) n.props["in_force_date"] = doc.in_force_date->to_iso();
    n.props["n_articles"] = static_cast<int64_t>(doc.articles.size());
    n.props["n_attachments"] = static_cast<int64_t>(doc.attachments.size());
    n.props["constitutional"] = config.is_constitutional_type(doc.doc_type);
    n.props["simplification_decree"] = config.is_simplification(doc.akn_id);
    std::vector<std::string> domains;
    if (doc.publication_date) {
        auto classes = ctx::classify_domains(doc.conclusions_text, *doc.publication_date, context);
        domains.assign(classes.begin(), classes.end());
    }
    n.props["domains"] = domains;
    return n;
}

graph::LawSubgraph law_subgraph(const akn::AknDocument& doc, const ctx::ContextDataset& context,
                                const Config& config, bool* context_matched) {
    graph::LawSubgraph sg;
    sg.law = build_law_node(doc, context, config);
    for (const akn::ArticleUnit& a : doc.articles) {
        sg.elements.push_back(article_node(doc.akn_id, a));
        sg.edges.push_back({doc.akn_id, sg.elements.back().id, EdgeType::HAS_ART, {}});
    }
    for (const akn::AttachmentUnit& att : doc.attachments) {
        sg.elements.push_back(attachment_node(doc.akn_id, att));
        sg.edges.push_back({doc.akn_id, sg.elements.back().id, EdgeType::HAS_ATTACHMENT, {}});
    }
    bool matched = false;
    auto context_edges = ctx::link_context(sg.law, context, &matched);
    sg.edges.insert(sg.edges.end(), context_edges.begin(), context_edges.end());
    if (context_matched) *context_matched = matched;
    return sg;
}

ResolveResult resolve_references(const akn::AknDocument& doc,
                                 const std::set<std::string>& known_ids, const Config& config) {
    ResolveResult result;
    std::map<std::string, std::string> article_number_by_eid;
    for (const akn::ArticleUnit& a : doc.articles) article_number_by_eid[a.eid] = a.number;
    std::set<std::string> attachment_fragments;
    for (const akn::AttachmentUnit& att : doc.attachments)
        attachment_fragments.insert(att.fragment());

    std::set<std::string> local_known = known_ids;

    for (const akn::RawReference& ref : doc.references) {
        akn::TargetExpr target = akn::parse_target_expr(ref.target_expr);
        std::string law_iri = target.law_iri.empty() ? doc.akn_id : target.law_iri;

        // source of the edge (and of a dangling report entry)
        std::string source_id;
        graph::EdgeType edge_type = EdgeType::CITATION;
        bool partial = !target.fragment.empty() || target.paragraph.has_value();

        switch (ref.kind) {
            case akn::ReferenceKind::PreambleCitation:
                source_id = doc.akn_id;
                edge_type = EdgeType::IN_PREAMBLE;
                break;
            case akn::ReferenceKind::TextualMod: {
                auto it = article_number_by_eid.find(ref.source_eid.value_or(""));
                if (it == article_number_by_eid.end())
                    throw Error(ErrorCode::UnresolvableSourceEid,
                                doc.akn_id + ": modification source '" +
                                    ref.source_eid.value_or("") +
                                    "' is not an article of the document");
                source_id = doc.akn_id + "#art_" + it->second;
                if (ref.mod_type == akn::ModType::Repeal)
                    edge_type = EdgeType::ABROGATES;
                else if (ref.mod_type == akn::ModType::Insertion && target.is_article &&
                         akn::has_latin_suffix(target.article_number))
                    edge_type = EdgeType::INTRODUCES;
                else
                    edge_type = EdgeType::AMENDS;
                break;
            }
            case akn::ReferenceKind::InlineRef: {
                const std::string eid = ref.source_eid.value_or("");
                if (auto it = article_number_by_eid.find(eid);
                    it != article_number_by_eid.end())
                    source_id = doc.akn_id + "#art_" + it->second;
                else if (attachment_fragments.count(eid))
                    source_id = doc.akn_id + "#" + eid;
                else
                    throw Error(ErrorCode::UnresolvableSourceEid,
                                doc.akn_id + ": reference source '" + eid +
                                    "' is not an element of the document");
                edge_type = EdgeType::CITATION;
                break;
            }
        }

        // target entity id
        std::string target_id;
        if (target.fragment.empty()) {
            target_id = law_iri;
        } else if (target.is_article) {
            target_id = law_iri + "#art_" + target.article_number;
        } else if (target.is_attachment) {
            target_id = law_iri + "#" + target.fragment;
        } else {
            result.dangling.push_back({source_id, ref.target_expr});
            ++result.fragment_misses;
            continue;
        }

        bool law_known = local_known.count(law_iri) != 0;
        if (!law_known) {
            if (config.is_whitelisted(law_iri) ||
                config.dangling_policy == DanglingPolicy::Stub) {
                result.stubs.push_back({stub_law_node(law_iri, config), std::nullopt});
                local_known.insert(law_iri);
                if (!target.fragment.empty()) {
                    StubRequest el = element_stub(law_iri, target);
                    local_known.insert(el.node.id);
                    result.stubs.push_back(std::move(el));
                }
            } else {
                result.dangling.push_back({source_id, ref.target_expr});
                continue;
            }
        } else if (!target.fragment.empty() && !local_known.count(target_id)) {
            if (edge_type == EdgeType::INTRODUCES) {
                StubRequest el = element_stub(law_iri, target);
                local_known.insert(el.node.id);
                result.stubs.push_back(std::move(el));
            } else {
                result.dangling.push_back({source_id, ref.target_expr});
                ++result.fragment_misses;
                continue;
            }
        }

        ResolvedReference resolved;
        resolved.source_id = source_id;
        resolved.target_id = target_id;
        resolved.edge_type = edge_type;
        if (ref.kind == akn::ReferenceKind::TextualMod) {
            resolved.props["partial"] = partial;
            if (edge_type == EdgeType::AMENDS)
                resolved.props["mod_type"] = std::string(akn::to_string(*ref.mod_type));
        }
        if (ref.paragraph) resolved.props["paragraph"] = *ref.paragraph;

        if (ref.kind == akn::ReferenceKind::PreambleCitation) {
            // cited entity is the source; the citing law is the destination
            resolved.source_id = target_id;
            resolved.target_id = doc.akn_id;
        }
        result.resolved.push_back(std::move(resolved));
    }
    return result;
}

namespace {

void apply_structure(graph::PropertyGraph& g, const akn::AknDocument& doc,
                     const ctx::ContextDataset& context, const Config& config,
                     IngestionReport& report) {
    bool matched = false;
    graph::LawSubgraph sg = law_subgraph(doc, context, config, &matched);
    graph::ReplaceSummary summary = g.replace_law_subgraph(doc.akn_id, sg);
    for (const auto& [k, v] : summary.nodes_added) report.nodes_added[k] += v;
    for (const auto& [k, v] : summary.nodes_removed) report.nodes_removed[k] += v;
    for (const auto& [k, v] : summary.edges_added) report.edges_added[k] += v;
    for (const auto& [k, v] : summary.edges_removed) report.edges_removed[k] += v;
    if (!matched && doc.publication_date) report.context_link_misses.push_back(doc.akn_id);
    for (const akn::QualityIssue& issue : doc.quality_flags)
        report.quality_flags[akn::to_string(issue.code)] += 1;
    report.multi_destination_mods += doc.multi_destination_mods;
    report.laws_processed += 1;
}

void apply_references(graph::PropertyGraph& g, const akn::AknDocument& doc,
                      const Config& config, std::set<std::string>& known,
                      IngestionReport& report) {
    ResolveResult res = resolve_references(doc, known, config);
    for (const StubRequest& stub : res.stubs) {
        if (!g.has_node(stub.node.id)) {
            report.nodes_added[stub.node.label] += 1;
            g.upsert_node(stub.node);
            known.insert(stub.node.id);
            if (stub.hierarchy_edge) {
                g.add_edge(*stub.hierarchy_edge);
                report.edges_added[stub.hierarchy_edge->type] += 1;
            }
        }
    }
    for (const ResolvedReference& r : res.resolved) {
        g.add_edge({r.source_id, r.target_id, r.edge_type, r.props});
        report.edges_added[r.edge_type] += 1;
    }
    for (const DanglingReference& d : res.dangling) report.dangling.push_back(d);
    if (res.fragment_misses > 0)
        report.quality_flags["DanglingFragment"] += res.fragment_misses;
}

} // namespace

void apply_document(graph::PropertyGraph& g, const akn::AknDocument& doc,
                    const ctx::ContextDataset& context, const Config& config,
                    IngestionReport& report) {
    apply_structure(g, doc, context, config, report);
    std::set<std::string> known;
    g.for_each_node([&](const graph::Node& n) { known.insert(n.id); });
    apply_references(g, doc, config, known, report);
}

IngestionReport ingest_corpus(graph::PropertyGraph& g, const ctx::ContextDataset& context,
                              const Config& config, const std::string& input_dir,
                              std::optional<Date> since) {
    IngestionReport report;
    fs::path dir(input_dir);
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw Error(ErrorCode::IoError, "not a readable directory: " + input_dir);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    akn::ParserOptions parser_opts = config.parser_options();
    std::vector<akn::AknDocument> docs;
    std::set<std::string> seen_ids;
    for (const fs::path& file : files) {
        report.files_seen += 1;
        try {
            akn::AknDocument doc = akn::parse_document(read_file(file), parser_opts);
            if (!seen_ids.insert(doc.akn_id).second) {
                report.file_errors.emplace_back(file.filename().string(),
                                                "duplicate akn_id '" + doc.akn_id +
                                                    "', file ignored");
                continue;
            }
            if (since) {
                if (!doc.publication_date || *doc.publication_date < *since) {
                    report.files_skipped += 1;
                    continue;
                }
            }
            docs.push_back(std::move(doc));
        } catch (const Error& e) {
            report.file_errors.emplace_back(file.filename().string(), e.what());
        }
    }

    // context nodes first: they are edge targets during structure apply
    for (const ctx::Government& gov : context.governments) {
        graph::Node n = ctx::government_node(gov);
        if (!g.has_node(n.id)) report.nodes_added[NodeLabel::Government] += 1;
        g.upsert_node(n);
    }
    for (const ctx::Legislature& leg : context.legislatures) {
        graph::Node n = ctx::legislature_node(leg);
        if (!g.has_node(n.id)) report.nodes_added[NodeLabel::Legislature] += 1;
        g.upsert_node(n);
    }

    // apply in id order so ingestion is independent of directory order
    std::sort(docs.begin(), docs.end(),
              [](const akn::AknDocument& a, const akn::AknDocument& b) {
                  return a.akn_id < b.akn_id;
              });

    for (const akn::AknDocument& doc : docs) apply_structure(g, doc, context, config, report);

    std::set<std::string> known;
    g.for_each_node([&](const graph::Node& n) { known.insert(n.id); });
    for (const akn::AknDocument& doc : docs) {
        try {
            apply_references(g, doc, config, known, report);
        } catch (const Error& e) {
            report.file_errors.emplace_back(doc.akn_id, e.what());
        }
    }

    for (const std::string& problem : g.validate())
        report.file_errors.emplace_back("<integrity>", problem);
    return report;
}

} // namespace ilpg::etl
