#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spa/graph.hpp"
#include "spa/jointree.hpp"
#include "spa/netlist.hpp"
#include "spa/ordering.hpp"
#include "spa/report.hpp"
#include "spa/tradeoff.hpp"

namespace spa {

/// Malformed or inconsistent serialized input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text produced by the *_to_* functions below parses back to an equal value,
// and re-exporting that value yields the same bytes.

/// {"name":..., "nodes":[...], "edges":[[p,c],...]} with nodes sorted
/// lexicographically and edges as label pairs sorted by (parent, child).
nlohmann::json dag_to_json(const Dag& dag);
/// Node ids of the result follow the (sorted) node list.
Dag dag_from_json(const nlohmann::json& j);

/// {"nodes":[labels by id], "edges":[[a,b],...]} with ids, edges sorted.
nlohmann::json graph_to_json(const UGraph& g);
UGraph graph_from_json(const nlohmann::json& j);

/// {"heuristic":..., "tie_break":..., "seed":..., "order":[ids]}.
nlohmann::json ordering_to_json(const Ordering& ordering);
Ordering ordering_from_json(const nlohmann::json& j);

nlohmann::json clique_tree_to_json(const CliqueTree& tree);
CliqueTree clique_tree_from_json(const nlohmann::json& j);

inline constexpr std::string_view kSeriesCsvHeader =
    "circuit,ordering,sep_bound,max_cluster,max_cutset,clusters,time_exp,space_exp";

std::string series_to_csv(const TradeoffSeries& series);
TradeoffSeries series_from_csv(std::string_view text);
nlohmann::json series_to_json(const TradeoffSeries& series);
TradeoffSeries series_from_json(const nlohmann::json& j);

/// One line per row; absent values are empty cells. Ordering columns follow
/// kAllHeuristics as <TAG>_clique,<TAG>_sepset.
std::string table_to_csv(std::span<const ReportRow> rows);
std::vector<ReportRow> table_from_csv(std::string_view text);
/// Absent values are JSON nulls.
nlohmann::json table_to_json(std::span<const ReportRow> rows);
std::vector<ReportRow> table_from_json(const nlohmann::json& j);

/// "parameter,size,frequency" rows.
std::string histogram_to_csv(const Histogram& h);
Histogram histogram_from_csv(std::string_view text);
nlohmann::json histogram_to_json(const Histogram& h);
Histogram histogram_from_json(const nlohmann::json& j);

/// Canonical text form of a JSON document (two-space indent, trailing
/// newline).
std::string dump(const nlohmann::json& j);

}  // namespace spa
