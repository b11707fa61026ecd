#pragma once

#include "config.hpp"
#include "graph/property_graph.hpp"
#include "util/dates.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ilpg::analytics {

struct YearSeries {
    std::vector<std::pair<int, double>> points; // years strictly increasing
};

struct Q5Hit {
    std::string citing_law;
    std::string cited_article;
    Date citation_date;
    Date abrogation_date;
};

struct Q6Row {
    std::vector<std::string> domains; // sorted, the exact domain set
    int64_t tabular_attachments = 0;
    int64_t laws = 0;
    double per_law = 0.0;
};

struct Q7Row {
    std::string government;
    int64_t decrees = 0;
    int64_t modifications = 0;
    double average = 0.0;
};

struct DependencySubgraph {
    std::string root;
    std::set<std::string> nodes;
    std::vector<graph::EdgeKey> edges;
    int depth_reached = 0;
};

struct GovernmentPairMetric {
    std::string source_gov;
    std::string dest_gov;
    int64_t modifications = 0;
    int64_t days_in_charge = 0;
    double per_day = 0.0;
};

struct Q10Row {
    std::string law;
    std::optional<int> distance;
};

struct Q10Group {
    std::string doc_type;
    int64_t laws = 0; // reachable laws of this type
    double average = 0.0;
};

// Laws enacted per year, optionally restricted to a doc_type set.
YearSeries q1_laws_per_year(const graph::PropertyGraph& g,
                            const std::optional<std::set<std::string>>& doc_types = std::nullopt);

// A law is cited when it (or any of its elements) is the source of a
// preamble-basis edge or the destination of a citation/modification edge.
std::vector<std::string> q2_never_cited(const graph::PropertyGraph& g);
// Fraction of each year's laws that are never cited.
YearSeries q2_never_cited_fraction(const graph::PropertyGraph& g);

// Laws published before `cutoff`, cited at least once on-or-before `d`
// and never after `d`. Throws InvalidInterval when cutoff > d.
std::vector<std::string> q3_outdated_laws(const graph::PropertyGraph& g, Date cutoff, Date d);

// Laws published on-or-before as_of and not repealed by then; repeal is a
// whole-law abrogation or the abrogation of every article.
int64_t q4_stock_in_force(const graph::PropertyGraph& g, Date as_of,
                          bool exclude_simplification = false);
// Stock at December 31 of each year in [year_from, year_to].
YearSeries q4_stock_series(const graph::PropertyGraph& g, int year_from, int year_to,
                           bool exclude_simplification = false);

// Articles used as preamble basis by laws published strictly after the
// article's earliest abrogation.
std::vector<Q5Hit> q5_citations_after_abrogation(const graph::PropertyGraph& g);

// Tabular-attachment counts grouped by each law's exact domain set.
std::vector<Q6Row> q6_tabular_attachments_by_domain(const graph::PropertyGraph& g);

// Average modifications applied by conversion laws to government decrees,
// per government of the decree.
std::vector<Q7Row> q7_decree_amendments(const graph::PropertyGraph& g, const Config& config);

// Direct and transitive legal bases of a law via preamble citations,
// including the article/attachment nodes on the paths.
DependencySubgraph q8_legal_basis(const graph::PropertyGraph& g, const std::string& root,
                                  std::optional<int> max_depth = std::nullopt);

// Modifications (amendments + abrogations) from each government's laws to
// laws of its one or two immediate predecessors, per day in charge.
std::vector<GovernmentPairMetric> q9_repealing_attitude(const graph::PropertyGraph& g,
                                                        bool two_predecessors = true);

// BFS distance of every law from the given constitution over the
// undirected law-level projection of all reference edges.
std::vector<Q10Row> q10_constitution_distance(const graph::PropertyGraph& g,
                                              const std::string& constitution_id);
std::vector<Q10Group> q10_constitution_distance_by_type(const graph::PropertyGraph& g,
                                                        const std::string& constitution_id);

// Reference edge types used for the law-level projection.
const std::set<graph::EdgeType>& reference_edge_types();

} // namespace ilpg::analytics
