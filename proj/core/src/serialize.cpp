#include "spa/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace spa {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    fail(std::string("bad field '") + key + "': " + e.what());
  }
}

std::size_t to_count(std::string_view cell, std::string_view column) {
  std::size_t v = 0;
  const auto* end = cell.data() + cell.size();
  const auto [p, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc{} || p != end || cell.empty()) {
    fail("column " + std::string(column) + ": not a count: '" + std::string(cell) + "'");
  }
  return v;
}

std::optional<std::size_t> to_opt_count(std::string_view cell, std::string_view column) {
  if (cell.empty()) return std::nullopt;
  return to_count(cell, column);
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string opt_cell(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

// RFC 4180 style records; quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
      }
      row.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (quoted) fail("unterminated quoted CSV field");
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

std::vector<std::string> split_header(std::string_view header) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = header.find(',', start);
    out.emplace_back(header.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Heuristic heuristic_from(std::string_view name) {
  const auto h = parse_heuristic(name);
  if (!h) fail("unknown ordering '" + std::string(name) + "'");
  return *h;
}

Parameter parameter_from(std::string_view name) {
  for (auto p : {Parameter::clique, Parameter::sepset, Parameter::cutset}) {
    if (to_string(p) == name) return p;
  }
  fail("unknown parameter '" + std::string(name) + "'");
}

json opt_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::size_t> opt_from(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_unsigned()) fail(std::string("field '") + key + "' is not a count");
  return v.get<std::size_t>();
}

json triple_json(const std::optional<StructuralTriple>& t) {
  if (!t) return nullptr;
  return json{{"clique", t->clique}, {"cutset", t->cutset}, {"separator", t->separator}};
}

std::optional<StructuralTriple> triple_from(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return StructuralTriple{get<std::size_t>(v, "clique"), get<std::size_t>(v, "cutset"),
                          get<std::size_t>(v, "separator")};
}

std::vector<std::string> table_header() {
  std::vector<std::string> h = {"circuit",           "variables",         "cutset",
                                "clustering_clique", "clustering_cutset", "clustering_separator",
                                "hybrid_clique",     "hybrid_cutset",     "hybrid_separator"};
  for (auto heuristic : kAllHeuristics) {
    const std::string tag(short_name(heuristic));
    h.push_back(tag + "_clique");
    h.push_back(tag + "_sepset");
  }
  h.emplace_back("reason");
  return h;
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json dag_to_json(const Dag& dag) {
  std::vector<std::string> nodes = dag.labels();
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, c] : dag.edges()) edges.emplace_back(dag.label(p), dag.label(c));
  std::sort(edges.begin(), edges.end());
  json je = json::array();
  for (const auto& [p, c] : edges) je.push_back({p, c});
  return json{{"name", dag.name()}, {"nodes", nodes}, {"edges", je}};
}

Dag dag_from_json(const json& j) {
  Dag dag(get<std::string>(j, "name"));
  auto nodes = get<std::vector<std::string>>(j, "nodes");
  if (!std::is_sorted(nodes.begin(), nodes.end())) fail("dag nodes are not sorted");
  for (auto& n : nodes) {
    if (dag.find(n)) fail("duplicate dag node '" + n + "'");
    dag.add_node(std::move(n));
  }
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) fail("dag edge is not a [parent, child] pair");
    const auto p = dag.find(e[0].get<std::string>());
    const auto c = dag.find(e[1].get<std::string>());
    if (!p || !c) fail("dag edge refers to an unknown node");
    if (!dag.add_edge(*p, *c)) fail("repeated dag edge");
  }
  return dag;
}

json graph_to_json(const UGraph& g) {
  json je = json::array();
  for (const auto& e : g.edges()) je.push_back({e.first, e.second});
  return json{{"nodes", g.labels()}, {"edges", je}};
}

UGraph graph_from_json(const json& j) {
  auto labels = get<std::vector<std::string>>(j, "nodes");
  const auto n = labels.size();
  UGraph g(n, std::move(labels));
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) fail("graph edge is not a pair");
    try {
      g.add_unique_edge(e[0].get<NodeId>(), e[1].get<NodeId>());
    } catch (const std::exception& ex) {
      fail(std::string("bad graph edge: ") + ex.what());
    }
  }
  return g;
}

json ordering_to_json(const Ordering& o) {
  const auto seq = o.order.sequence();
  return json{{"heuristic", to_string(o.heuristic)},
              {"tie_break", to_string(o.tie_break.kind)},
              {"seed", o.tie_break.seed},
              {"order", std::vector<NodeId>(seq.begin(), seq.end())}};
}

Ordering ordering_from_json(const json& j) {
  Ordering o;
  o.heuristic = heuristic_from(get<std::string>(j, "heuristic"));
  const auto kind = get<std::string>(j, "tie_break");
  if (kind == "index") {
    o.tie_break = TieBreak::by_index();
  } else if (kind == "random") {
    o.tie_break = TieBreak::random(get<std::uint64_t>(j, "seed"));
  } else {
    fail("unknown tie_break '" + kind + "'");
  }
  auto seq = get<std::vector<NodeId>>(j, "order");
  const auto n = seq.size();
  try {
    o.order = EliminationOrder(std::move(seq), n);
  } catch (const GraphError& e) {
    fail(e.what());
  }
  return o;
}

json clique_tree_to_json(const CliqueTree& tree) {
  json edges = json::array();
  for (const auto& e : tree.edges) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"separator", e.separator}});
  }
  return json{{"ordering", ordering_to_json(tree.ordering)},
              {"secondary_bound", opt_json(tree.secondary_bound)},
              {"clusters", tree.clusters},
              {"edges", edges}};
}

CliqueTree clique_tree_from_json(const json& j) {
  CliqueTree tree;
  tree.ordering = ordering_from_json(field(j, "ordering"));
  tree.secondary_bound = opt_from(j, "secondary_bound");
  tree.clusters = get<std::vector<Cluster>>(j, "clusters");
  for (const auto& c : tree.clusters) {
    if (!std::is_sorted(c.begin(), c.end())) fail("cluster is not sorted");
  }
  for (const auto& e : field(j, "edges")) {
    tree.edges.push_back(
        {get<std::size_t>(e, "a"), get<std::size_t>(e, "b"), get<Cluster>(e, "separator")});
  }
  if (!verify_running_intersection(tree)) fail("clique tree violates running intersection");
  return tree;
}

std::string series_to_csv(const TradeoffSeries& series) {
  std::string out(kSeriesCsvHeader);
  out += '\n';
  const auto circuit = csv_cell(series.circuit);
  const auto ordering = std::string(to_string(series.heuristic));
  for (const auto& p : series.points) {
    out += join({circuit, ordering, std::to_string(p.sep_bound), std::to_string(p.max_cluster),
                 std::to_string(p.max_cutset), std::to_string(p.cluster_count),
                 std::to_string(p.time_exponent), std::to_string(p.space_exponent)});
    out += '\n';
  }
  return out;
}

TradeoffSeries series_from_csv(std::string_view text) {
  const auto rows = read_csv(text);
  if (rows.empty() || join(rows.front()) != kSeriesCsvHeader) fail("series CSV header mismatch");
  const auto header = split_header(kSeriesCsvHeader);
  TradeoffSeries series;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != header.size()) fail("series CSV row " + std::to_string(i) + ": wrong cell count");
    const auto h = heuristic_from(r[1]);
    if (i == 1) {
      series.circuit = r[0];
      series.heuristic = h;
    } else if (r[0] != series.circuit || h != series.heuristic) {
      fail("series CSV mixes circuits or orderings");
    }
    DecompositionPoint p;
    p.sep_bound = to_count(r[2], header[2]);
    p.max_cluster = to_count(r[3], header[3]);
    p.max_cutset = to_count(r[4], header[4]);
    p.cluster_count = to_count(r[5], header[5]);
    p.time_exponent = to_count(r[6], header[6]);
    p.space_exponent = to_count(r[7], header[7]);
    series.points.push_back(p);
  }
  return series;
}

json series_to_json(const TradeoffSeries& series) {
  json points = json::array();
  for (const auto& p : series.points) {
    points.push_back({{"sep_bound", p.sep_bound},
                      {"max_cluster", p.max_cluster},
                      {"max_cutset", p.max_cutset},
                      {"clusters", p.cluster_count},
                      {"time_exp", p.time_exponent},
                      {"space_exp", p.space_exponent}});
  }
  return json{{"circuit", series.circuit},
              {"ordering", to_string(series.heuristic)},
              {"points", points}};
}

TradeoffSeries series_from_json(const json& j) {
  TradeoffSeries series;
  series.circuit = get<std::string>(j, "circuit");
  series.heuristic = heuristic_from(get<std::string>(j, "ordering"));
  for (const auto& p : field(j, "points")) {
    series.points.push_back({get<std::size_t>(p, "sep_bound"), get<std::size_t>(p, "max_cluster"),
                             get<std::size_t>(p, "max_cutset"), get<std::size_t>(p, "clusters"),
                             get<std::size_t>(p, "time_exp"), get<std::size_t>(p, "space_exp")});
  }
  return series;
}

std::string table_to_csv(std::span<const ReportRow> rows) {
  std::string out = join(table_header()) + '\n';
  for (const auto& row : rows) {
    std::vector<std::string> cells = {csv_cell(row.circuit), opt_cell(row.variables),
                                      opt_cell(row.conditioning_cutset)};
    for (const auto* t : {&row.clustering, &row.hybrid}) {
      cells.push_back(*t ? std::to_string((*t)->clique) : "");
      cells.push_back(*t ? std::to_string((*t)->cutset) : "");
      cells.push_back(*t ? std::to_string((*t)->separator) : "");
    }
    for (auto heuristic : kAllHeuristics) {
      std::optional<MaxSizes> m;
      if (row.orderings) {
        for (const auto& [h, sizes] : *row.orderings) {
          if (h == heuristic) m = sizes;
        }
      }
      cells.push_back(m ? std::to_string(m->clique) : "");
      cells.push_back(m ? std::to_string(m->sepset) : "");
    }
    cells.push_back(row.missing_reason ? csv_cell(*row.missing_reason) : "");
    out += join(cells) + '\n';
  }
  return out;
}

std::vector<ReportRow> table_from_csv(std::string_view text) {
  const auto rows = read_csv(text);
  const auto header = table_header();
  if (rows.empty() || rows.front() != header) fail("table CSV header mismatch");
  std::vector<ReportRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != header.size()) fail("table CSV row " + std::to_string(i) + ": wrong cell count");
    ReportRow row;
    row.circuit = r[0];
    row.variables = to_opt_count(r[1], header[1]);
    row.conditioning_cutset = to_opt_count(r[2], header[2]);
    auto triple = [&](std::size_t at) -> std::optional<StructuralTriple> {
      const auto a = to_opt_count(r[at], header[at]);
      const auto b = to_opt_count(r[at + 1], header[at + 1]);
      const auto c = to_opt_count(r[at + 2], header[at + 2]);
      if (!a && !b && !c) return std::nullopt;
      if (!a || !b || !c) fail("table CSV row " + std::to_string(i) + ": partial triple");
      return StructuralTriple{*a, *b, *c};
    };
    row.clustering = triple(3);
    row.hybrid = triple(6);
    OrderingComparison cmp;
    std::size_t at = 9;
    for (auto heuristic : kAllHeuristics) {
      const auto c = to_opt_count(r[at], header[at]);
      const auto s = to_opt_count(r[at + 1], header[at + 1]);
      if (c && s) cmp.emplace_back(heuristic, MaxSizes{*c, *s});
      at += 2;
    }
    if (!cmp.empty()) row.orderings = std::move(cmp);
    if (!r[at].empty()) row.missing_reason = r[at];
    out.push_back(std::move(row));
  }
  return out;
}

json table_to_json(std::span<const ReportRow> rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json orderings = nullptr;
    if (row.orderings) {
      orderings = json::array();
      for (const auto& [h, m] : *row.orderings) {
        orderings.push_back({{"ordering", to_string(h)}, {"clique", m.clique}, {"sepset", m.sepset}});
      }
    }
    out.push_back({{"circuit", row.circuit},
                   {"variables", opt_json(row.variables)},
                   {"cutset", opt_json(row.conditioning_cutset)},
                   {"clustering", triple_json(row.clustering)},
                   {"hybrid", triple_json(row.hybrid)},
                   {"orderings", orderings},
                   {"reason", row.missing_reason ? json(*row.missing_reason) : json(nullptr)}});
  }
  return out;
}

std::vector<ReportRow> table_from_json(const json& j) {
  if (!j.is_array()) fail("table JSON is not an array");
  std::vector<ReportRow> out;
  for (const auto& r : j) {
    ReportRow row;
    row.circuit = get<std::string>(r, "circuit");
    row.variables = opt_from(r, "variables");
    row.conditioning_cutset = opt_from(r, "cutset");
    row.clustering = triple_from(r, "clustering");
    row.hybrid = triple_from(r, "hybrid");
    if (const auto& o = field(r, "orderings"); !o.is_null()) {
      OrderingComparison cmp;
      for (const auto& e : o) {
        cmp.emplace_back(heuristic_from(get<std::string>(e, "ordering")),
                         MaxSizes{get<std::size_t>(e, "clique"), get<std::size_t>(e, "sepset")});
      }
      row.orderings = std::move(cmp);
    }
    if (const auto& reason = field(r, "reason"); !reason.is_null()) {
      row.missing_reason = reason.get<std::string>();
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string histogram_to_csv(const Histogram& h) {
  std::string out = "parameter,size,frequency\n";
  const std::string p(to_string(h.parameter));
  for (const auto& [size, freq] : h.bins) {
    out += p + ',' + std::to_string(size) + ',' + std::to_string(freq) + '\n';
  }
  return out;
}

Histogram histogram_from_csv(std::string_view text) {
  const auto rows = read_csv(text);
  if (rows.empty() || join(rows.front()) != "parameter,size,frequency") {
    fail("histogram CSV header mismatch");
  }
  Histogram h;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 3) fail("histogram CSV row " + std::to_string(i) + ": wrong cell count");
    const auto p = parameter_from(r[0]);
    if (i == 1) {
      h.parameter = p;
    } else if (p != h.parameter) {
      fail("histogram CSV mixes parameters");
    }
    const auto size = to_count(r[1], "size");
    const auto freq = to_count(r[2], "frequency");
    if (freq == 0 || !h.bins.emplace(size, freq).second) fail("bad histogram bin");
    h.total += freq;
  }
  return h;
}

json histogram_to_json(const Histogram& h) {
  json bins = json::array();
  for (const auto& [size, freq] : h.bins) bins.push_back({size, freq});
  return json{{"parameter", to_string(h.parameter)}, {"total", h.total}, {"bins", bins}};
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  h.parameter = parameter_from(get<std::string>(j, "parameter"));
  h.total = get<std::size_t>(j, "total");
  std::size_t sum = 0;
  for (const auto& b : field(j, "bins")) {
    if (!b.is_array() || b.size() != 2) fail("histogram bin is not a pair");
    const auto size = b[0].get<std::size_t>();
    const auto freq = b[1].get<std::size_t>();
    if (freq == 0 || !h.bins.emplace(size, freq).second) fail("bad histogram bin");
    sum += freq;
  }
  if (sum != h.total) fail("histogram total does not match its bins");
  return h;
}

}  // namespace spa
