#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spa/jointree.hpp"
#include "spa/netlist.hpp"
#include "spa/ordering.hpp"
#include "spa/tradeoff.hpp"

namespace spa {

enum class Parameter { clique, sepset, cutset };

std::string_view to_string(Parameter p);

/// Unit-width frequency table.
struct Histogram {
  Parameter parameter = Parameter::clique;
  std::map<std::size_t, std::size_t> bins;  // size -> frequency
  std::size_t total = 0;

  /// Number of entries strictly larger than `size`.
  [[nodiscard]] std::size_t count_above(std::size_t size) const;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

Histogram histogram(std::span<const std::size_t> sizes, Parameter parameter = Parameter::clique);

/// Smallest range [low, high] of the ascending sizes that covers at least
/// ceil(q * total) entries, starting from the smallest size. `covered` counts
/// every entry <= high.
struct QuantileRange {
  std::size_t low = 0;
  std::size_t high = 0;
  std::size_t covered = 0;
  std::size_t total = 0;

  friend bool operator==(const QuantileRange&, const QuantileRange&) = default;
};

/// Throws std::invalid_argument for an empty list or q outside (0, 1].
QuantileRange quantile_range(std::span<const std::size_t> sizes, double q);

struct MaxSizes {
  std::size_t clique = 0;
  std::size_t sepset = 0;

  friend bool operator==(const MaxSizes&, const MaxSizes&) = default;
};

/// Max clique and sepset per heuristic, in kAllHeuristics order.
using OrderingComparison = std::vector<std::pair<Heuristic, MaxSizes>>;

OrderingComparison ordering_comparison(const UGraph& moral, const Dag& dag, TieBreak tie = {});

struct StructuralTriple {
  std::size_t clique = 0;
  std::size_t cutset = 0;
  std::size_t separator = 0;

  friend bool operator==(const StructuralTriple&, const StructuralTriple&) = default;
};

/// One circuit's row across the structural and ordering tables. A row whose
/// analysis did not finish keeps its name and a reason; every other field is
/// empty.
struct ReportRow {
  std::string circuit;
  std::optional<std::size_t> variables;            // brute-force exponent
  std::optional<std::size_t> conditioning_cutset;  // whole moral graph
  std::optional<StructuralTriple> clustering;      // primary tree
  std::optional<StructuralTriple> hybrid;          // selected secondary tree
  std::optional<OrderingComparison> orderings;
  std::optional<std::string> missing_reason;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Hybrid separators reported for the ISCAS'85 circuits that have one.
std::optional<std::size_t> reference_hybrid_separator(std::string_view circuit);

/// Index of the point used as the hybrid column.
///
/// With `sep_bound`, the point with the largest separator not above it.
/// Otherwise the circuit's reference separator when known, and failing that
/// the point minimising space + time exponents (ties to the larger
/// separator).
std::size_t select_hybrid(const TradeoffSeries& series, std::optional<std::size_t> sep_bound = {});

struct TableOptions {
  Heuristic heuristic = Heuristic::min_degree;
  TieBreak tie_break;
  std::optional<std::size_t> sep_bound;
  bool compare_orderings = true;
};

/// Full per-circuit analysis: moral graph, primary tree, whole-graph cutset,
/// tradeoff series, hybrid pick and (optionally) the ordering comparison.
ReportRow structural_row(const Dag& dag, const TableOptions& options = {});

std::vector<ReportRow> structural_table(std::span<const Dag> circuits,
                                        const TableOptions& options = {});

/// DOT rendering of a clique tree; nodes are labeled with cluster sizes and
/// edges with separator sizes.
std::string export_dot(const CliqueTree& tree, std::string_view name = "jointree");

}  // namespace spa
