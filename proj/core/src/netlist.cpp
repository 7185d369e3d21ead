#include "spa/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <regex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace spa {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > begin) tokens.push_back(line.substr(begin, i - begin));
  }
  return tokens;
}

std::optional<std::size_t> to_count(std::string_view token) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// Counts declared in header comments, when present.
struct DeclaredCounts {
  std::optional<std::size_t> inputs;
  std::optional<std::size_t> outputs;
  std::optional<std::size_t> gates;
};

void check_declared(const Circuit& c, const DeclaredCounts& declared) {
  auto mismatch = [&](const char* what, std::size_t want, std::size_t got) {
    throw SemanticError(c.name + ": header declares " + std::to_string(want) + " " + what +
                        ", netlist has " + std::to_string(got));
  };
  if (declared.inputs && *declared.inputs != c.inputs.size()) {
    mismatch("inputs", *declared.inputs, c.inputs.size());
  }
  if (declared.outputs && *declared.outputs != c.outputs.size()) {
    mismatch("outputs", *declared.outputs, c.outputs.size());
  }
  if (declared.gates && *declared.gates != c.gates.size()) {
    mismatch("gates", *declared.gates, c.gates.size());
  }
}

// Checks that every fan-in and output names a defined signal.
void check_references(const Circuit& c) {
  std::unordered_set<std::string> defined;
  for (const auto& s : c.signal_order) {
    if (!defined.insert(s).second) throw SemanticError(c.name + ": signal '" + s + "' defined twice");
  }
  for (const auto& g : c.gates) {
    for (const auto& f : g.fanin) {
      if (!defined.contains(f)) {
        throw SemanticError(c.name + ": gate '" + g.output + "' reads undefined signal '" + f + "'");
      }
    }
  }
  for (const auto& o : c.outputs) {
    if (!defined.contains(o)) throw SemanticError(c.name + ": undefined output signal '" + o + "'");
  }
}

// ---------------------------------------------------------------------------
// .bench

Circuit parse_bench(std::string_view text, std::string name) {
  static const std::regex declared_re(
      R"(^#\s*(\d+)\s+(inputs?|outputs?|inverters?|buffers?|gates?)\b)", std::regex::icase);
  static const std::regex io_re(R"(^(INPUT|OUTPUT)\s*\(\s*([^\s()]+)\s*\)$)", std::regex::icase);
  static const std::regex gate_re(R"(^([^\s=]+)\s*=\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)$)");

  Circuit c;
  c.name = std::move(name);
  DeclaredCounts declared;
  std::size_t declared_gate_parts = 0;
  bool any_gate_part = false;
  std::size_t line_no = 0;
  bool saw_content = false;

  for (auto raw : split_lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::cmatch m;
      if (std::regex_search(line.begin(), line.end(), m, declared_re)) {
        const auto count = static_cast<std::size_t>(std::stoul(m[1].str()));
        const auto kind = upper(m[2].str());
        if (kind.starts_with("INPUT")) {
          declared.inputs = count;
        } else if (kind.starts_with("OUTPUT")) {
          declared.outputs = count;
        } else {
          declared_gate_parts += count;
          any_gate_part = true;
        }
      }
      continue;
    }
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    saw_content = true;
    std::cmatch m;
    if (std::regex_match(line.begin(), line.end(), m, io_re)) {
      const auto kind = upper(m[1].str());
      if (kind == "INPUT") {
        c.inputs.push_back(m[2].str());
        c.signal_order.push_back(m[2].str());
      } else {
        c.outputs.push_back(m[2].str());
      }
      continue;
    }
    if (std::regex_match(line.begin(), line.end(), m, gate_re)) {
      Gate g;
      g.output = m[1].str();
      g.function = upper(m[2].str());
      if (g.function == "DFF") {
        throw SemanticError(c.name + ": line " + std::to_string(line_no) +
                            ": sequential element DFF is not supported");
      }
      std::stringstream args(m[3].str());
      std::string arg;
      while (std::getline(args, arg, ',')) {
        const auto t = trim(arg);
        if (t.empty()) throw ParseError(line_no, "empty fan-in in gate '" + g.output + "'");
        g.fanin.emplace_back(t);
      }
      if (g.fanin.empty()) throw ParseError(line_no, "gate '" + g.output + "' has no fan-in");
      c.signal_order.push_back(g.output);
      c.gates.push_back(std::move(g));
      continue;
    }
    throw ParseError(line_no, "unrecognized line: " + std::string(line));
  }
  if (!saw_content) throw ParseError(line_no, "netlist is empty");
  if (any_gate_part) declared.gates = declared_gate_parts;
  check_references(c);
  check_declared(c, declared);
  return c;
}

// ---------------------------------------------------------------------------
// .isc
//
// Each line is `address name type ...`. Gate lines carry fanout and fan-in
// counts followed by fault annotations, and their fan-in addresses follow on
// the next line(s). Fanout branches (`from`) name their stem and are folded
// into it. Signals are identified by the address of their defining line.

Circuit parse_isc(std::string_view text, std::string name) {
  static const std::regex in_re(R"(lines from primary input\s+gates\D*(\d+))", std::regex::icase);
  static const std::regex out_re(R"(lines from primary output\s+gates\D*(\d+))", std::regex::icase);
  static const std::regex interior_re(R"(lines from interior gate outputs\D*(\d+))", std::regex::icase);

  struct Line {
    std::string address;
    std::string name;
    std::string type;
    std::size_t fanout = 0;
    std::vector<std::string> fanin_addresses;  // gates only
    std::string stem_name;                     // branches only
  };

  Circuit c;
  c.name = std::move(name);
  DeclaredCounts declared;
  std::optional<std::size_t> declared_out;
  std::optional<std::size_t> declared_interior;
  std::vector<Line> defs;
  std::size_t line_no = 0;
  std::size_t pending_fanin = 0;
  bool saw_content = false;

  for (auto raw : split_lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '*') {
      std::cmatch m;
      const std::string s(line);
      if (std::regex_search(s.c_str(), m, in_re)) declared.inputs = std::stoul(m[1].str());
      if (std::regex_search(s.c_str(), m, out_re)) declared_out = std::stoul(m[1].str());
      if (std::regex_search(s.c_str(), m, interior_re)) declared_interior = std::stoul(m[1].str());
      continue;
    }
    saw_content = true;
    auto tokens = tokenize(line);
    if (pending_fanin > 0) {
      for (auto t : tokens) {
        if (!to_count(t)) throw ParseError(line_no, "expected fan-in address, got '" + std::string(t) + "'");
        if (pending_fanin == 0) throw ParseError(line_no, "too many fan-in addresses");
        defs.back().fanin_addresses.emplace_back(t);
        --pending_fanin;
      }
      continue;
    }
    if (tokens.size() < 3 || !to_count(tokens[0])) {
      throw ParseError(line_no, "expected `address name type ...`");
    }
    Line def;
    def.address = std::string(tokens[0]);
    def.name = std::string(tokens[1]);
    def.type = upper(tokens[2]);
    if (def.type == "FROM") {
      if (tokens.size() < 4) throw ParseError(line_no, "fanout branch without stem");
      def.stem_name = std::string(tokens[3]);
    } else {
      if (tokens.size() < 5) throw ParseError(line_no, "expected fanout and fan-in counts");
      const auto fanout = to_count(tokens[3]);
      const auto fanin = to_count(tokens[4]);
      if (!fanout || !fanin) throw ParseError(line_no, "malformed fanout/fan-in counts");
      def.fanout = *fanout;
      if (def.type == "INPT") {
        if (*fanin != 0) throw ParseError(line_no, "primary input with fan-in");
      } else if (*fanin == 0) {
        throw ParseError(line_no, "gate '" + def.name + "' has no fan-in");
      }
      pending_fanin = *fanin;
    }
    defs.push_back(std::move(def));
  }
  if (!saw_content) throw ParseError(line_no, "netlist is empty");
  if (pending_fanin > 0) throw ParseError(line_no, "unexpected end of file inside a fan-in list");

  // Resolve every address to the address of its stem signal.
  std::unordered_map<std::string, std::size_t> by_address;
  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (!by_address.emplace(defs[i].address, i).second) {
      throw SemanticError(c.name + ": address " + defs[i].address + " defined twice");
    }
    by_name.emplace(defs[i].name, i);
  }
  std::unordered_map<std::string, std::string> signal_of;  // address -> stem address
  std::unordered_set<std::string> referenced;              // addresses read by some gate
  for (const auto& d : defs) {
    for (const auto& a : d.fanin_addresses) referenced.insert(a);
  }
  for (const auto& d : defs) {
    if (d.type != "FROM") {
      signal_of[d.address] = d.address;
      continue;
    }
    // Branches may chain through other branches in principle.
    const Line* cur = &d;
    std::size_t hops = 0;
    while (cur->type == "FROM") {
      auto it = by_name.find(cur->stem_name);
      if (it == by_name.end()) {
        throw SemanticError(c.name + ": fanout branch '" + d.name + "' refers to unknown stem '" +
                            cur->stem_name + "'");
      }
      cur = &defs[it->second];
      if (++hops > defs.size()) throw SemanticError(c.name + ": cyclic fanout branches");
    }
    signal_of[d.address] = cur->address;
  }

  std::unordered_set<std::string> output_set;
  for (const auto& d : defs) {
    if (d.type == "FROM") {
      // An unused branch drives a primary output.
      if (!referenced.contains(d.address)) {
        const auto& stem = signal_of[d.address];
        if (output_set.insert(stem).second) c.outputs.push_back(stem);
      }
      continue;
    }
    c.signal_order.push_back(d.address);
    if (d.type == "INPT") {
      c.inputs.push_back(d.address);
    } else {
      Gate g;
      g.output = d.address;
      g.function = d.type;
      for (const auto& a : d.fanin_addresses) {
        auto it = signal_of.find(a);
        if (it == signal_of.end()) {
          throw SemanticError(c.name + ": gate '" + d.name + "' reads undefined address " + a);
        }
        g.fanin.push_back(it->second);
      }
      c.gates.push_back(std::move(g));
    }
    if (d.type != "INPT" && d.fanout == 0 && output_set.insert(d.address).second) {
      c.outputs.push_back(d.address);
    }
  }
  check_references(c);
  if (declared_out) declared.outputs = declared_out;
  if (declared_out && declared_interior) declared.gates = *declared_out + *declared_interior;
  check_declared(c, declared);
  return c;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string_view to_string(NetlistFormat format) {
  return format == NetlistFormat::isc ? "isc" : "bench";
}

std::optional<NetlistFormat> format_from_path(const std::filesystem::path& path) {
  const auto ext = upper(path.extension().string());
  if (ext == ".ISC") return NetlistFormat::isc;
  if (ext == ".BENCH") return NetlistFormat::bench;
  return std::nullopt;
}

Circuit parse_netlist(std::string_view text, NetlistFormat format, std::string name) {
  return format == NetlistFormat::isc ? parse_isc(text, std::move(name))
                                      : parse_bench(text, std::move(name));
}

Circuit load_netlist(const std::filesystem::path& path) {
  const auto format = format_from_path(path);
  if (!format) throw std::runtime_error(path.string() + ": unrecognized netlist extension");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_netlist(buffer.str(), *format, path.stem().string());
}

std::string to_bench(const Circuit& circuit) {
  std::ostringstream out;
  out << "# " << circuit.name << "\n";
  out << "# " << circuit.inputs.size() << " inputs\n";
  out << "# " << circuit.outputs.size() << " outputs\n";
  out << "# " << circuit.gates.size() << " gates\n\n";
  for (const auto& s : circuit.inputs) out << "INPUT(" << s << ")\n";
  out << "\n";
  for (const auto& s : circuit.outputs) out << "OUTPUT(" << s << ")\n";
  out << "\n";
  for (const auto& g : circuit.gates) {
    out << g.output << " = " << g.function << "(";
    for (std::size_t i = 0; i < g.fanin.size(); ++i) out << (i ? ", " : "") << g.fanin[i];
    out << ")\n";
  }
  return out.str();
}

NodeId Dag::add_node(std::string label) {
  const auto id = static_cast<NodeId>(labels_.size());
  labels_.push_back(std::move(label));
  parents_.emplace_back();
  children_.emplace_back();
  return id;
}

bool Dag::add_edge(NodeId parent, NodeId child) {
  if (parent >= size() || child >= size()) throw GraphError("dag edge endpoint out of range");
  if (parent == child) throw StructuralError("self-loop on '" + labels_[parent] + "'");
  auto& p = parents_[child];
  if (std::find(p.begin(), p.end(), parent) != p.end()) return false;
  p.push_back(parent);
  children_[parent].push_back(child);
  ++edge_count_;
  return true;
}

std::optional<NodeId> Dag::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

std::vector<std::pair<NodeId, NodeId>> Dag::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId child = 0; child < size(); ++child) {
    for (NodeId parent : parents_[child]) out.emplace_back(parent, child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dag build_dag(const Circuit& circuit) {
  Dag dag(circuit.name);
  std::unordered_map<std::string, NodeId> id;
  for (const auto& s : circuit.signal_order) {
    if (!id.emplace(s, dag.size()).second) {
      throw SemanticError(circuit.name + ": signal '" + s + "' defined twice");
    }
    dag.add_node(s);
  }
  for (const auto& g : circuit.gates) {
    const auto out = id.find(g.output);
    if (out == id.end()) throw SemanticError(circuit.name + ": gate output '" + g.output + "' not defined");
    for (const auto& f : g.fanin) {
      const auto in = id.find(f);
      if (in == id.end()) {
        throw SemanticError(circuit.name + ": gate '" + g.output + "' reads undefined signal '" + f + "'");
      }
      if (in->second == out->second) {
        throw StructuralError(circuit.name + ": gate '" + g.output + "' feeds itself");
      }
      dag.add_edge(in->second, out->second);
    }
  }
  topological_sort(dag);  // throws on a cycle
  return dag;
}

std::vector<NodeId> topological_sort(const Dag& dag, std::span<const std::size_t> rank) {
  const std::size_t n = dag.size();
  if (!rank.empty() && rank.size() != n) throw GraphError("rank vector does not match the dag");
  auto key = [&](NodeId v) { return rank.empty() ? std::size_t{v} : rank[v]; };
  auto later = [&](NodeId a, NodeId b) { return key(a) > key(b); };
  std::priority_queue<NodeId, std::vector<NodeId>, decltype(later)> ready(later);
  std::vector<std::size_t> pending(n);
  for (NodeId v = 0; v < n; ++v) {
    pending[v] = dag.parents(v).size();
    if (pending[v] == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeId child : dag.children(v)) {
      if (--pending[child] == 0) ready.push(child);
    }
  }
  if (order.size() != n) {
    for (NodeId v = 0; v < n; ++v) {
      if (pending[v] > 0) {
        throw StructuralError(dag.name() + ": cycle through '" + dag.label(v) + "'");
      }
    }
  }
  return order;
}

}  // namespace spa
