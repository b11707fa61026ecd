#include "analytics/queries.hpp"

#include "util/text.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace ilpg::analytics {

using graph::EdgeKey;
using graph::EdgeType;
using graph::NodeLabel;
using graph::PropertyGraph;

namespace {

struct LawIndex {
    std::vector<std::string> laws; // sorted ids
    std::map<std::string, std::string> parent_law; // element -> law
    std::map<std::string, std::optional<Date>> pub_date;

    std::optional<std::string> law_of(const std::string& id) const {
        if (auto it = parent_law.find(id); it != parent_law.end()) return it->second;
        if (std::binary_search(laws.begin(), laws.end(), id)) return id;
        return std::nullopt;
    }
};

LawIndex build_law_index(const PropertyGraph& g) {
    LawIndex idx;
    idx.laws = g.node_ids(NodeLabel::Law);
    for (const std::string& id : idx.laws)
        idx.pub_date[id] = graph::get_date(g.node(id).props, "publication_date");
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        if (key.type == EdgeType::HAS_ART || key.type == EdgeType::HAS_ATTACHMENT)
            idx.parent_law[key.dst] = key.src;
    });
    return idx;
}

// cited law -> publication dates of the laws citing it
std::map<std::string, std::vector<Date>> build_citation_dates(const PropertyGraph& g,
                                                              const LawIndex& idx) {
    std::map<std::string, std::vector<Date>> cited;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        std::optional<std::string> cited_law, citing_law;
        switch (key.type) {
            case EdgeType::IN_PREAMBLE:
                cited_law = idx.law_of(key.src);
                citing_law = key.dst;
                break;
            case EdgeType::CITATION:
            case EdgeType::AMENDS:
            case EdgeType::ABROGATES:
            case EdgeType::INTRODUCES:
                cited_law = idx.law_of(key.dst);
                citing_law = idx.law_of(key.src);
                break;
            default: return;
        }
        if (!cited_law || !citing_law) return;
        auto it = idx.pub_date.find(*citing_law);
        if (it == idx.pub_date.end() || !it->second) return; // undatable citer
        cited[*cited_law].push_back(*it->second);
    });
    return cited;
}

// laws cited by anything, regardless of dates
std::set<std::string> build_cited_set(const PropertyGraph& g, const LawIndex& idx) {
    std::set<std::string> cited;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        std::optional<std::string> cited_law;
        switch (key.type) {
            case EdgeType::IN_PREAMBLE: cited_law = idx.law_of(key.src); break;
            case EdgeType::CITATION:
            case EdgeType::AMENDS:
            case EdgeType::ABROGATES:
            case EdgeType::INTRODUCES: cited_law = idx.law_of(key.dst); break;
            default: return;
        }
        if (cited_law) cited.insert(*cited_law);
    });
    return cited;
}

struct Abrogation {
    Date date;
    bool by_simplification = false;
};

struct AbrogationIndex {
    std::map<std::string, std::vector<Abrogation>> whole_law; // law -> events
    std::map<std::string, std::vector<Abrogation>> article;   // article -> events
};

AbrogationIndex build_abrogations(const PropertyGraph& g, const LawIndex& idx) {
    AbrogationIndex out;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap& props) {
        if (key.type != EdgeType::ABROGATES) return;
        auto src_law = idx.law_of(key.src);
        if (!src_law) return;
        auto date_it = idx.pub_date.find(*src_law);
        if (date_it == idx.pub_date.end() || !date_it->second) return;
        Abrogation ev{*date_it->second,
                      graph::get_bool(g.node(*src_law).props, "simplification_decree")};
        const graph::Node& dst = g.node(key.dst);
        if (dst.label == NodeLabel::Law && !graph::get_bool(props, "partial"))
            out.whole_law[key.dst].push_back(ev);
        else if (dst.label == NodeLabel::Article)
            out.article[key.dst].push_back(ev);
    });
    return out;
}

bool law_repealed(const PropertyGraph& g, const AbrogationIndex& abro, const std::string& law,
                  Date as_of, bool exclude_simplification) {
    auto qualifies = [&](const Abrogation& ev) {
        if (ev.date > as_of) return false;
        if (exclude_simplification && ev.by_simplification) return false;
        return true;
    };
    if (auto it = abro.whole_law.find(law); it != abro.whole_law.end())
        for (const Abrogation& ev : it->second)
            if (qualifies(ev)) return true;
    // article-wise repeal: every article abrogated
    auto articles = g.neighbors(law, EdgeType::HAS_ART, graph::Direction::Out);
    if (articles.empty()) return false;
    for (const auto& nb : articles) {
        bool gone = false;
        if (auto it = abro.article.find(nb.node_id); it != abro.article.end())
            for (const Abrogation& ev : it->second)
                if (qualifies(ev)) {
                    gone = true;
                    break;
                }
        if (!gone) return false;
    }
    return true;
}

std::map<std::string, std::set<std::string>> build_law_adjacency(
    const PropertyGraph& g, const LawIndex& idx, const std::set<EdgeType>& types) {
    std::map<std::string, std::set<std::string>> adjacency;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        if (!types.count(key.type)) return;
        auto a = idx.law_of(key.src);
        auto b = idx.law_of(key.dst);
        if (!a || !b || *a == *b) return;
        adjacency[*a].insert(*b);
        adjacency[*b].insert(*a);
    });
    return adjacency;
}

std::map<std::string, int> bfs_distances(
    const std::map<std::string, std::set<std::string>>& adjacency, const std::string& start) {
    std::map<std::string, int> dist;
    std::deque<std::string> queue;
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = adjacency.find(cur);
        if (it == adjacency.end()) continue;
        for (const std::string& next : it->second) {
            if (dist.count(next)) continue;
            dist[next] = dist[cur] + 1;
            queue.push_back(next);
        }
    }
    return dist;
}

// government of a law through its UNDER_GOVERNMENT edge
std::map<std::string, std::string> build_law_government(const PropertyGraph& g) {
    std::map<std::string, std::string> out;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        if (key.type == EdgeType::UNDER_GOVERNMENT) out[key.src] = key.dst;
    });
    return out;
}

} // namespace

const std::set<EdgeType>& reference_edge_types() {
    static const std::set<EdgeType> types = {EdgeType::IN_PREAMBLE, EdgeType::CITATION,
                                             EdgeType::AMENDS, EdgeType::ABROGATES,
                                             EdgeType::INTRODUCES};
    return types;
}

YearSeries q1_laws_per_year(const PropertyGraph& g,
                            const std::optional<std::set<std::string>>& doc_types) {
    std::map<int, int64_t> counts;
    for (const std::string& id : g.node_ids(NodeLabel::Law)) {
        const graph::Node& law = g.node(id);
        auto date = graph::get_date(law.props, "publication_date");
        if (!date) continue;
        if (doc_types) {
            auto type = graph::get_string(law.props, "doc_type");
            if (!type || !doc_types->count(*type)) continue;
        }
        counts[date->year()] += 1;
    }
    YearSeries series;
    for (const auto& [year, count] : counts)
        series.points.emplace_back(year, static_cast<double>(count));
    return series;
}

std::vector<std::string> q2_never_cited(const PropertyGraph& g) {
    LawIndex idx = build_law_index(g);
    std::set<std::string> cited = build_cited_set(g, idx);
    std::vector<std::string> out;
    for (const std::string& law : idx.laws)
        if (!cited.count(law)) out.push_back(law);
    return out;
}

YearSeries q2_never_cited_fraction(const PropertyGraph& g) {
    LawIndex idx = build_law_index(g);
    std::set<std::string> cited = build_cited_set(g, idx);
    std::map<int, std::pair<int64_t, int64_t>> per_year; // year -> (never cited, total)
    for (const std::string& law : idx.laws) {
        auto date = idx.pub_date.at(law);
        if (!date) continue;
        auto& [nc, total] = per_year[date->year()];
        total += 1;
        if (!cited.count(law)) nc += 1;
    }
    YearSeries series;
    for (const auto& [year, counts] : per_year)
        series.points.emplace_back(year,
                                   static_cast<double>(counts.first) / counts.second);
    return series;
}

std::vector<std::string> q3_outdated_laws(const PropertyGraph& g, Date cutoff, Date d) {
    if (d < cutoff)
        throw Error(ErrorCode::InvalidInterval, "cutoff date must not exceed d");
    LawIndex idx = build_law_index(g);
    auto citation_dates = build_citation_dates(g, idx);
    std::vector<std::string> out;
    for (const std::string& law : idx.laws) {
        auto pub = idx.pub_date.at(law);
        if (!pub || !(*pub < cutoff)) continue;
        auto it = citation_dates.find(law);
        if (it == citation_dates.end()) continue;
        bool cited_by_d = false, cited_after_d = false;
        for (Date when : it->second) {
            if (when <= d) cited_by_d = true;
            else cited_after_d = true;
        }
        if (cited_by_d && !cited_after_d) out.push_back(law);
    }
    return out;
}

int64_t q4_stock_in_force(const PropertyGraph& g, Date as_of, bool exclude_simplification) {
    LawIndex idx = build_law_index(g);
    AbrogationIndex abro = build_abrogations(g, idx);
    int64_t stock = 0;
    for (const std::string& law : idx.laws) {
        auto pub = idx.pub_date.at(law);
        if (!pub || *pub > as_of) continue;
        if (!law_repealed(g, abro, law, as_of, exclude_simplification)) ++stock;
    }
    return stock;
}

YearSeries q4_stock_series(const PropertyGraph& g, int year_from, int year_to,
                           bool exclude_simplification) {
    if (year_to < year_from)
        throw Error(ErrorCode::InvalidInterval, "series range is inverted");
    YearSeries series;
    for (int year = year_from; year <= year_to; ++year) {
        Date at{year, 12, 31};
        series.points.emplace_back(
            year, static_cast<double>(q4_stock_in_force(g, at, exclude_simplification)));
    }
    return series;
}

std::vector<Q5Hit> q5_citations_after_abrogation(const PropertyGraph& g) {
    LawIndex idx = build_law_index(g);
    AbrogationIndex abro = build_abrogations(g, idx);
    std::vector<Q5Hit> hits;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        if (key.type != EdgeType::IN_PREAMBLE) return;
        const graph::Node& src = g.node(key.src);
        if (src.label != NodeLabel::Article) return;
        auto dit = idx.pub_date.find(key.dst);
        if (dit == idx.pub_date.end() || !dit->second) return;
        Date citing_date = *dit->second;
        auto it = abro.article.find(key.src);
        if (it == abro.article.end()) return;
        Date earliest = it->second.front().date;
        for (const Abrogation& ev : it->second) earliest = std::min(earliest, ev.date);
        if (citing_date > earliest)
            hits.push_back({key.dst, key.src, citing_date, earliest});
    });
    std::sort(hits.begin(), hits.end(), [](const Q5Hit& a, const Q5Hit& b) {
        return std::tie(a.citing_law, a.cited_article, a.citation_date) <
               std::tie(b.citing_law, b.cited_article, b.citation_date);
    });
    return hits;
}

std::vector<Q6Row> q6_tabular_attachments_by_domain(const PropertyGraph& g) {
    std::map<std::vector<std::string>, std::pair<int64_t, int64_t>> groups; // (attachments, laws)
    for (const std::string& id : g.node_ids(NodeLabel::Law)) {
        const graph::Node& law = g.node(id);
        std::vector<std::string> domains = graph::get_string_list(law.props, "domains");
        std::sort(domains.begin(), domains.end());
        int64_t tabular = 0;
        for (const auto& nb : g.neighbors(id, EdgeType::HAS_ATTACHMENT, graph::Direction::Out))
            if (graph::get_bool(g.node(nb.node_id).props, "is_tabular")) ++tabular;
        auto& [attachments, laws] = groups[domains];
        attachments += tabular;
        laws += 1;
    }
    std::vector<Q6Row> rows;
    for (const auto& [domains, counts] : groups) {
        Q6Row row;
        row.domains = domains;
        row.tabular_attachments = counts.first;
        row.laws = counts.second;
        row.per_law = static_cast<double>(counts.first) / counts.second;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Q7Row> q7_decree_amendments(const PropertyGraph& g, const Config& config) {
    LawIndex idx = build_law_index(g);
    auto law_gov = build_law_government(g);

    // modification edges grouped by (target decree, modifying law)
    std::map<std::string, std::map<std::string, int64_t>> mods_into;
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        if (key.type != EdgeType::AMENDS && key.type != EdgeType::ABROGATES) return;
        auto target_law = idx.law_of(key.dst);
        auto source_law = idx.law_of(key.src);
        if (!target_law || !source_law || *target_law == *source_law) return;
        mods_into[*target_law][*source_law] += 1;
    });

    std::map<std::string, std::pair<int64_t, int64_t>> per_gov; // gov -> (mods, decrees)
    for (const std::string& id : idx.laws) {
        const graph::Node& law = g.node(id);
        auto type = graph::get_string(law.props, "doc_type");
        if (!type || !config.is_decree_type(*type)) continue;
        auto decree_date = idx.pub_date.at(id);
        if (!decree_date) continue;
        auto gov_it = law_gov.find(id);
        if (gov_it == law_gov.end()) continue;

        // conversion law: modifies the decree, inside the window, title match
        std::optional<std::pair<Date, std::string>> conversion;
        int64_t conversion_mods = 0;
        if (auto mi = mods_into.find(id); mi != mods_into.end()) {
            for (const auto& [candidate, count] : mi->second) {
                auto cand_date = idx.pub_date.at(candidate);
                if (!cand_date) continue;
                int delta = *cand_date - *decree_date;
                if (delta <= 0 || delta > config.conversion_window_days) continue;
                if (!config.conversion_title_keyword.empty()) {
                    auto title = graph::get_string(g.node(candidate).props, "title");
                    if (!title || !contains_ci(*title, config.conversion_title_keyword)) continue;
                }
                std::pair<Date, std::string> rank{*cand_date, candidate};
                if (!conversion || rank < *conversion) {
                    conversion = rank;
                    conversion_mods = count;
                }
            }
        }
        const std::string& gov =
            graph::get_string(g.node(gov_it->second).props, "name").value_or(gov_it->second);
        auto& [mods, decrees] = per_gov[gov];
        decrees += 1;
        if (conversion) mods += conversion_mods;
    }

    std::vector<Q7Row> rows;
    for (const auto& [gov, counts] : per_gov) {
        Q7Row row;
        row.government = gov;
        row.modifications = counts.first;
        row.decrees = counts.second;
        row.average = static_cast<double>(counts.first) / counts.second;
        rows.push_back(std::move(row));
    }
    return rows;
}

DependencySubgraph q8_legal_basis(const PropertyGraph& g, const std::string& root,
                                  std::optional<int> max_depth) {
    if (!g.has_node(root) || g.node(root).label != NodeLabel::Law)
        throw Error(ErrorCode::UnknownNode, "unknown law: " + root);

    DependencySubgraph out;
    out.root = root;
    out.nodes.insert(root);

    std::map<std::string, int> law_depth;
    law_depth[root] = 0;
    std::deque<std::string> queue{root};

    while (!queue.empty()) {
        std::string law = queue.front();
        queue.pop_front();
        int depth = law_depth.at(law);
        if (max_depth && depth >= *max_depth) continue;

        for (const auto& nb : g.neighbors(law, EdgeType::IN_PREAMBLE, graph::Direction::In)) {
            const std::string& entity = nb.node_id; // cited law/article/attachment
            out.nodes.insert(entity);
            out.edges.push_back(nb.edge);

            std::string base_law = entity;
            const graph::Node& entity_node = g.node(entity);
            if (entity_node.label == NodeLabel::Article ||
                entity_node.label == NodeLabel::Attachment) {
                auto parent = g.law_of(entity);
                base_law = *parent;
                out.nodes.insert(base_law);
                // hierarchy edge connecting the cited element to its law
                for (const auto& up : g.neighbors(entity, std::nullopt, graph::Direction::In)) {
                    if (up.edge.type == EdgeType::HAS_ART ||
                        up.edge.type == EdgeType::HAS_ATTACHMENT) {
                        out.edges.push_back(up.edge);
                        break;
                    }
                }
            }
            if (!law_depth.count(base_law)) {
                law_depth[base_law] = depth + 1;
                queue.push_back(base_law);
            }
        }
    }

    for (const auto& [law, depth] : law_depth) out.depth_reached = std::max(out.depth_reached, depth);
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

std::vector<GovernmentPairMetric> q9_repealing_attitude(const PropertyGraph& g,
                                                        bool two_predecessors) {
    LawIndex idx = build_law_index(g);
    auto law_gov = build_law_government(g);

    struct GovInfo {
        std::string node_id;
        std::string name;
        Date start;
        Date end;
    };
    std::vector<GovInfo> governments;
    for (const std::string& id : g.node_ids(NodeLabel::Government)) {
        const graph::Node& node = g.node(id);
        auto start = graph::get_date(node.props, "start_date");
        auto end = graph::get_date(node.props, "end_date");
        if (!start || !end) continue;
        governments.push_back(
            {id, graph::get_string(node.props, "name").value_or(id), *start, *end});
    }
    std::sort(governments.begin(), governments.end(),
              [](const GovInfo& a, const GovInfo& b) { return a.start < b.start; });

    // modification counts between governments
    std::map<std::pair<std::string, std::string>, int64_t> counts; // (src gov node, dst gov node)
    g.for_each_edge([&](const EdgeKey& key, const graph::PropertyMap&) {
        if (key.type != EdgeType::AMENDS && key.type != EdgeType::ABROGATES) return;
        auto src_law = idx.law_of(key.src);
        auto dst_law = idx.law_of(key.dst);
        if (!src_law || !dst_law) return;
        auto sg = law_gov.find(*src_law);
        auto dg = law_gov.find(*dst_law);
        if (sg == law_gov.end() || dg == law_gov.end()) return;
        counts[{sg->second, dg->second}] += 1;
    });

    std::vector<GovernmentPairMetric> rows;
    for (size_t i = 0; i < governments.size(); ++i) {
        int back = two_predecessors ? 2 : 1;
        for (int k = 1; k <= back; ++k) {
            if (static_cast<int>(i) - k < 0) break;
            const GovInfo& source = governments[i];
            const GovInfo& dest = governments[i - k];
            GovernmentPairMetric row;
            row.source_gov = source.name;
            row.dest_gov = dest.name;
            row.days_in_charge = (source.end - source.start) + 1;
            auto it = counts.find({source.node_id, dest.node_id});
            row.modifications = it == counts.end() ? 0 : it->second;
            row.per_day = static_cast<double>(row.modifications) / row.days_in_charge;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<Q10Row> q10_constitution_distance(const PropertyGraph& g,
                                              const std::string& constitution_id) {
    if (!g.has_node(constitution_id) || g.node(constitution_id).label != NodeLabel::Law)
        throw Error(ErrorCode::UnknownNode, "unknown law: " + constitution_id);
    LawIndex idx = build_law_index(g);
    auto adjacency = build_law_adjacency(g, idx, reference_edge_types());
    auto dist = bfs_distances(adjacency, constitution_id);
    std::vector<Q10Row> rows;
    for (const std::string& law : idx.laws) {
        Q10Row row;
        row.law = law;
        if (auto it = dist.find(law); it != dist.end()) row.distance = it->second;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Q10Group> q10_constitution_distance_by_type(const PropertyGraph& g,
                                                        const std::string& constitution_id) {
    auto rows = q10_constitution_distance(g, constitution_id);
    std::map<std::string, std::pair<int64_t, int64_t>> groups; // type -> (sum, count)
    for (const Q10Row& row : rows) {
        if (!row.distance) continue;
        std::string type = graph::get_string(g.node(row.law).props, "doc_type").value_or("");
        auto& [sum, count] = groups[type];
        sum += *row.distance;
        count += 1;
    }
    std::vector<Q10Group> out;
    for (const auto& [type, sums] : groups) {
        Q10Group grp;
        grp.doc_type = type;
        grp.laws = sums.second;
        grp.average = static_cast<double>(sums.first) / sums.second;
        out.push_back(std::move(grp));
    }
    return out;
}

} // namespace ilpg::analytics
