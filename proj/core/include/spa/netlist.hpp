#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spa/graph.hpp"

namespace spa {

enum class NetlistFormat { isc, bench };

std::string_view to_string(NetlistFormat format);
/// Recognizes `.isc` and `.bench` (case-insensitive).
std::optional<NetlistFormat> format_from_path(const std::filesystem::path& path);

struct Gate {
  std::string output;
  std::string function;  // upper-case tag as written: AND, NAND, NOT, BUFF, ...
  std::vector<std::string> fanin;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// A combinational netlist with fanout branches folded into their stems.
struct Circuit {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Gate> gates;
  /// Every input and gate output in the order the source file defines them.
  /// Node ids of the causal graph follow this order.
  std::vector<std::string> signal_order;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Syntax error; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed text that does not describe a valid circuit (dangling
/// references, duplicate definitions, count mismatches).
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The circuit graph has a cycle.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Circuit parse_netlist(std::string_view text, NetlistFormat format, std::string name = {});

/// Reads and parses a file; format from the extension, name from the stem.
Circuit load_netlist(const std::filesystem::path& path);

/// Writes the circuit in `.bench` syntax.
std::string to_bench(const Circuit& circuit);

/// Causal graph of a circuit: one node per primary input and gate output,
/// edges from each fan-in signal to the gate output.
///
/// Node ids follow definition order in the source file.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::string name) : name_(std::move(name)) {}

  NodeId add_node(std::string label);
  /// Returns false for a repeated edge.
  bool add_edge(NodeId parent, NodeId child);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
  [[nodiscard]] const std::string& label(NodeId v) const { return labels_.at(v); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::optional<NodeId> find(std::string_view label) const;
  [[nodiscard]] const std::vector<NodeId>& parents(NodeId v) const { return parents_.at(v); }
  [[nodiscard]] const std::vector<NodeId>& children(NodeId v) const { return children_.at(v); }
  /// (parent, child) pairs sorted by ids.
  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::size_t edge_count_ = 0;
};

/// Throws StructuralError if the circuit is cyclic.
Dag build_dag(const Circuit& circuit);

/// Kahn's algorithm. Among ready nodes the one with the smallest `rank`
/// goes first (node id when `rank` is empty). Throws StructuralError on a
/// cycle.
std::vector<NodeId> topological_sort(const Dag& dag, std::span<const std::size_t> rank = {});

}  // namespace spa
