#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "spa/graph.hpp"
#include "spa/jointree.hpp"
#include "spa/netlist.hpp"
#include "spa/ordering.hpp"
#include "spa/report.hpp"
#include "spa/serialize.hpp"
#include "spa/tradeoff.hpp"

namespace spa::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string ordering;  // empty: the command's default
  std::string tie_break = "index";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sep_bound;
  std::string format = "csv";
  std::string out_dir;
  double timeout = 0;  // seconds, 0 = none
  std::size_t oracle_limit = kTreewidthOracleLimit;
  std::size_t jobs = 0;  // 0 = hardware concurrency
  bool dag_dump = false;
  bool dot = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  fs::path path;
  std::string circuit;
};

// c17 < c432 < c1355: shorter names first, then lexicographic.
bool circuit_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

// Expands directories into their netlists. When a circuit exists in both
// formats the .isc file is used.
std::vector<Input> expand_inputs(const std::vector<std::string>& args) {
  std::vector<Input> out;
  for (const auto& arg : args) {
    const fs::path p(arg);
    if (fs::is_directory(p)) {
      std::map<std::string, fs::path> by_stem;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (!entry.is_regular_file()) continue;
        const auto format = format_from_path(entry.path());
        if (!format) continue;
        const auto stem = entry.path().stem().string();
        auto [it, fresh] = by_stem.emplace(stem, entry.path());
        if (!fresh && *format == NetlistFormat::isc) it->second = entry.path();
      }
      std::vector<Input> found;
      for (const auto& [stem, path] : by_stem) found.push_back({path, stem});
      std::sort(found.begin(), found.end(),
                [](const Input& a, const Input& b) { return circuit_less(a.circuit, b.circuit); });
      if (found.empty()) throw UsageError(arg + ": no netlists in directory");
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back({p, p.stem().string()});
    }
  }
  return out;
}

std::vector<Heuristic> select_heuristics(const std::string& name, const std::string& fallback) {
  const auto& chosen = name.empty() ? fallback : name;
  if (chosen == "all") return {std::begin(kAllHeuristics), std::end(kAllHeuristics)};
  const auto h = parse_heuristic(chosen);
  if (!h) throw UsageError("unknown ordering '" + chosen + "'");
  return {*h};
}

TieBreak make_tie_break(const RunConfig& cfg) {
  if (cfg.tie_break == "random") {
    if (!cfg.seed) throw UsageError("--tie-break random requires --seed");
    return TieBreak::random(*cfg.seed);
  }
  if (cfg.seed) throw UsageError("--seed is only valid with --tie-break random");
  return TieBreak::by_index();
}

Dag load_dag(const Input& in) {
  auto circuit = load_netlist(in.path);
  circuit.name = in.circuit;
  return build_dag(circuit);
}

enum class Status { ok, input_error, violation, timeout };

template <class R>
struct Outcome {
  Status status = Status::ok;
  R value{};
  std::string message;
};

// Runs f(input) on a detached thread so a timed-out computation can be
// abandoned. f must own everything it touches.
template <class R, class F>
Outcome<R> run_one(const Input& in, double timeout, const F& f) {
  auto promise = std::make_shared<std::promise<R>>();
  auto result = promise->get_future();
  std::thread([promise, in, f] {
    try {
      promise->set_value(f(in));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  }).detach();
  if (timeout > 0 &&
      result.wait_for(std::chrono::duration<double>(timeout)) == std::future_status::timeout) {
    std::ostringstream msg;
    msg << "timeout after " << timeout << "s";
    return {Status::timeout, {}, msg.str()};
  }
  try {
    return {Status::ok, result.get(), {}};
  } catch (const JoinTreeError& e) {
    return {Status::violation, {}, e.what()};
  } catch (const std::exception& e) {
    return {Status::input_error, {}, e.what()};
  }
}

template <class R, class F>
std::vector<Outcome<R>> run_jobs(const std::vector<Input>& inputs, const RunConfig& cfg, const F& f) {
  std::vector<Outcome<R>> out(inputs.size());
  std::size_t workers = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, inputs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) out[i] = run_one<R>(inputs[i], cfg.timeout, f);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) throw std::runtime_error(tmp.string() + ": write failed");
  }
  fs::rename(tmp, path);
}

struct Artifact {
  std::string file;  // <circuit>_<ordering>_<artifact>.<ext>
  std::string text;
};

std::string artifact_name(const std::string& circuit, std::string_view ordering,
                          std::string_view artifact, std::string_view ext) {
  return circuit + "_" + std::string(ordering) + "_" + std::string(artifact) + "." + std::string(ext);
}

// Joins CSV documents sharing one header.
std::string concat_csv(const std::vector<std::string>& docs) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i == 0) {
      out += docs[i];
    } else {
      out += docs[i].substr(docs[i].find('\n') + 1);
    }
  }
  return out;
}

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  int parse() {
    if (cfg_.inputs.size() != 1) throw UsageError("parse takes exactly one netlist");
    const auto dag = load_dag(expand_inputs(cfg_.inputs).front());
    if (cfg_.dag_dump) {
      out_ << dump(dag_to_json(dag));
    } else {
      const auto moral = moralize(dag);
      out_ << nlohmann::ordered_json{{"nodes", dag.size()}, {"moral_edges", moral.edge_count()}}.dump() << "\n";
    }
    return kOk;
  }

  int analyze() {
    const auto inputs = inputs_or_throw();
    const auto heuristics = select_heuristics(cfg_.ordering, "all");
    TableOptions options;
    options.tie_break = make_tie_break(cfg_);
    options.sep_bound = cfg_.sep_bound;
    options.compare_orderings = heuristics.size() > 1;
    options.heuristic = heuristics.size() > 1 ? Heuristic::min_degree : heuristics.front();
    const std::string tag = heuristics.size() > 1 ? "all" : std::string(to_string(heuristics.front()));

    const auto results = run_jobs<ReportRow>(
        inputs, cfg_, [options](const Input& in) { return structural_row(load_dag(in), options); });
    std::vector<ReportRow> rows;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      auto row = results[i].value;
      report_failure(inputs[i], results[i]);
      if (results[i].status != Status::ok) {
        row = ReportRow{};
        row.circuit = inputs[i].circuit;
        row.missing_reason = results[i].message;
      }
      rows.push_back(std::move(row));
    }
    std::vector<Artifact> artifacts;
    for (const auto& row : rows) {
      artifacts.push_back({artifact_name(row.circuit, tag, "table", cfg_.format), table_text({&row, 1})});
    }
    emit(artifacts, table_text(rows));
    return status_of(results);
  }

  int tradeoff() {
    const auto inputs = inputs_or_throw();
    const auto heuristics = select_heuristics(cfg_.ordering, "min-degree");
    const auto tie = make_tie_break(cfg_);
    const auto results = run_jobs<std::vector<TradeoffSeries>>(
        inputs, cfg_, [heuristics, tie](const Input& in) {
          const auto dag = load_dag(in);
          const auto moral = moralize(dag);
          std::vector<TradeoffSeries> out;
          for (auto h : heuristics) {
            out.push_back(tradeoff_series(primary_tree(moral, make_ordering(h, moral, dag, tie)), moral,
                                          dag.name()));
          }
          return out;
        });
    std::vector<Artifact> artifacts;
    std::vector<std::string> csv;
    json all = json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      report_failure(inputs[i], results[i]);
      for (const auto& s : results[i].value) {
        const auto text = cfg_.format == "json" ? dump(series_to_json(s)) : series_to_csv(s);
        artifacts.push_back({artifact_name(s.circuit, to_string(s.heuristic), "series", cfg_.format), text});
        csv.push_back(series_to_csv(s));
        all.push_back(series_to_json(s));
      }
    }
    emit(artifacts, cfg_.format == "json" ? dump(all) : concat_csv(csv));
    return status_of(results);
  }

  int histogram() {
    const auto inputs = inputs_or_throw();
    const auto heuristics = select_heuristics(cfg_.ordering, "min-degree");
    const auto tie = make_tie_break(cfg_);
    struct Hist {
      std::string circuit;
      Heuristic heuristic;
      std::vector<Histogram> histograms;
    };
    const auto results = run_jobs<std::vector<Hist>>(inputs, cfg_, [heuristics, tie](const Input& in) {
      const auto dag = load_dag(in);
      const auto moral = moralize(dag);
      std::vector<Hist> out;
      for (auto h : heuristics) {
        const auto tree = primary_tree(moral, make_ordering(h, moral, dag, tie));
        const auto cliques = tree.cluster_sizes();
        const auto sepsets = tree.separator_sizes();
        const auto cutsets = cluster_cutsets(tree, moral);
        out.push_back({dag.name(),
                       h,
                       {spa::histogram(cliques, Parameter::clique), spa::histogram(sepsets, Parameter::sepset),
                        spa::histogram(cutsets, Parameter::cutset)}});
      }
      return out;
    });
    std::vector<Artifact> artifacts;
    std::vector<std::string> csv;
    json all = json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      report_failure(inputs[i], results[i]);
      for (const auto& entry : results[i].value) {
        json group = json::array();
        for (const auto& h : entry.histograms) {
          const auto artifact = std::string(to_string(h.parameter)) + "-histogram";
          const auto text = cfg_.format == "json" ? dump(histogram_to_json(h)) : histogram_to_csv(h);
          artifacts.push_back(
              {artifact_name(entry.circuit, to_string(entry.heuristic), artifact, cfg_.format), text});
          csv.push_back(histogram_to_csv(h));
          group.push_back(histogram_to_json(h));
        }
        all.push_back({{"circuit", entry.circuit},
                       {"ordering", to_string(entry.heuristic)},
                       {"histograms", group}});
      }
    }
    emit(artifacts, cfg_.format == "json" ? dump(all) : concat_csv(csv));
    return status_of(results);
  }

  int tree() {
    const auto inputs = inputs_or_throw();
    const auto heuristics = select_heuristics(cfg_.ordering, "min-degree");
    const auto tie = make_tie_break(cfg_);
    const auto bound = cfg_.sep_bound;
    const bool as_json = cfg_.format == "json" && !cfg_.dot;
    const auto results =
        run_jobs<std::vector<CliqueTree>>(inputs, cfg_, [heuristics, tie, bound](const Input& in) {
          const auto dag = load_dag(in);
          const auto moral = moralize(dag);
          std::vector<CliqueTree> out;
          for (auto h : heuristics) {
            auto t = primary_tree(moral, make_ordering(h, moral, dag, tie));
            out.push_back(bound ? merge_by_separator(t, *bound) : std::move(t));
          }
          return out;
        });
    std::vector<Artifact> artifacts;
    std::string joined;
    const std::string artifact = bound ? "tree-s" + std::to_string(*bound) : "tree";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      report_failure(inputs[i], results[i]);
      for (const auto& t : results[i].value) {
        const auto name = inputs[i].circuit + "_" + std::string(to_string(t.ordering.heuristic));
        const auto text = as_json ? dump(clique_tree_to_json(t)) : export_dot(t, name);
        artifacts.push_back({artifact_name(inputs[i].circuit, to_string(t.ordering.heuristic), artifact,
                                           as_json ? "json" : "dot"),
                             text});
        joined += text;
      }
    }
    emit(artifacts, joined);
    return status_of(results);
  }

  int verify() {
    const auto inputs = inputs_or_throw();
    const auto heuristics = select_heuristics(cfg_.ordering, "all");
    const auto tie = make_tie_break(cfg_);
    const auto limit = cfg_.oracle_limit;
    struct Check {
      std::string circuit;
      Heuristic heuristic;
      std::size_t checks = 0;
      std::vector<std::string> violations;
      bool oracle = false;
    };
    const auto results =
        run_jobs<std::vector<Check>>(inputs, cfg_, [heuristics, tie, limit](const Input& in) {
          const auto dag = load_dag(in);
          std::vector<Check> out;
          for (auto h : heuristics) {
            Check c{dag.name(), h, 0, {}, false};
            c.oracle = verify_circuit(dag, h, tie, limit, c.checks, c.violations);
            out.push_back(std::move(c));
          }
          return out;
        });
    std::vector<Artifact> artifacts;
    std::string joined;
    bool violated = false;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      report_failure(inputs[i], results[i]);
      for (const auto& c : results[i].value) {
        violated = violated || !c.violations.empty();
        const json j{{"circuit", c.circuit},
                     {"ordering", to_string(c.heuristic)},
                     {"checks", c.checks},
                     {"oracle", c.oracle},
                     {"violations", c.violations}};
        artifacts.push_back({artifact_name(c.circuit, to_string(c.heuristic), "verify", "json"), dump(j)});
        joined += j.dump() + "\n";
      }
    }
    emit(artifacts, joined);
    const int status = status_of(results);
    if (status == kInputError) return status;
    return violated ? kViolation : status;
  }

 private:
  // Returns true when the exact oracles ran.
  static bool verify_circuit(const Dag& dag, Heuristic h, TieBreak tie, std::size_t limit,
                             std::size_t& checks, std::vector<std::string>& violations) {
    const auto name = std::string(to_string(h));
    auto check = [&](bool ok, const std::string& what) {
      ++checks;
      if (!ok) violations.push_back(name + ": " + what);
    };
    const auto moral = moralize(dag);
    const auto ordering = make_ordering(h, moral, dag, tie);
    const auto tri = triangulate(moral, ordering.order);
    check(is_chordal(tri.induced), "triangulated graph is not chordal");

    CliqueTree tree;
    try {
      tree = build_primary_tree(maximal_cliques(tri.induced, ordering.order), ordering);
    } catch (const JoinTreeError& e) {
      check(false, e.what());
      return false;
    }
    check(verify_running_intersection(tree), "primary tree violates running intersection");
    const auto width = induced_width(moral, ordering.order);
    check(moral.empty() || tree.max_cluster_size() == width + 1, "max cluster != induced width + 1");

    auto forest_after = [](const UGraph& g, const std::vector<NodeId>& cut) {
      std::vector<bool> removed(g.size(), false);
      for (auto v : cut) removed[v] = true;
      return is_forest_without(g, removed);
    };
    const auto cutset = cutset_heuristic(moral);
    check(forest_after(moral, cutset), "whole-graph cutset leaves a cycle");

    for (auto bound : series_bounds(tree)) {
      const auto merged = merge_by_separator(tree, bound);
      const auto tag = "bound " + std::to_string(bound) + ": ";
      check(verify_running_intersection(merged), tag + "running intersection fails");
      check(separator_width(merged) <= bound, tag + "separator above bound");
      for (const auto& cluster : merged.clusters) {
        const auto sub = moral.induced_subgraph(cluster);
        check(forest_after(sub, cutset_heuristic(sub)), tag + "cluster cutset leaves a cycle");
      }
      if (bound == 0) {
        check(merged.clusters.size() == connected_components(moral),
              "bound 0 does not give one cluster per component");
      }
    }

    if (moral.size() > limit) return false;
    const auto tw = treewidth_exact(moral, limit);
    const auto fvs = cutset_exact(moral, limit);
    check(tw <= width, "exact treewidth above heuristic induced width");
    check(fvs.size() <= cutset.size(), "exact cutset larger than heuristic cutset");
    check(tw <= fvs.size() + 1, "treewidth exceeds cutset + 1");
    return true;
  }

  std::vector<Input> inputs_or_throw() const {
    if (cfg_.inputs.empty()) throw UsageError("no input netlists");
    return expand_inputs(cfg_.inputs);
  }

  std::string table_text(std::span<const ReportRow> rows) const {
    return cfg_.format == "json" ? dump(table_to_json(rows)) : table_to_csv(rows);
  }

  template <class R>
  void report_failure(const Input& in, const Outcome<R>& o) const {
    if (o.status != Status::ok) err_ << in.path.string() << ": " << o.message << "\n";
  }

  template <class R>
  int status_of(const std::vector<Outcome<R>>& results) const {
    bool input = false;
    bool violation = false;
    bool timeout = false;
    for (const auto& r : results) {
      input = input || r.status == Status::input_error;
      violation = violation || r.status == Status::violation;
      timeout = timeout || r.status == Status::timeout;
    }
    if (input) return kInputError;
    if (violation) return kViolation;
    return timeout ? kTimeout : kOk;
  }

  void emit(const std::vector<Artifact>& artifacts, const std::string& combined) {
    if (cfg_.out_dir.empty()) {
      out_ << combined;
      return;
    }
    const fs::path dir(cfg_.out_dir);
    fs::create_directories(dir);
    for (const auto& a : artifacts) {
      write_atomic(dir / a.file, a.text);
      out_ << (dir / a.file).string() << "\n";
    }
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_run_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("inputs", cfg.inputs, "Netlist files (.isc, .bench) or directories");
  sub.add_option("--ordering", cfg.ordering,
                 "min-degree, min-width, max-cardinality, causal or all")
      ->envname("SPA_ORDERING");
  sub.add_option("--tie-break", cfg.tie_break, "index or random")
      ->check(CLI::IsMember({"index", "random"}))
      ->envname("SPA_TIE_BREAK");
  sub.add_option("--seed", cfg.seed, "Seed for --tie-break random")->envname("SPA_SEED");
  sub.add_option("--sep-bound", cfg.sep_bound, "Separator bound")->envname("SPA_SEP_BOUND");
  sub.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("SPA_FORMAT");
  sub.add_option("--out", cfg.out_dir, "Output directory (stdout when absent)")->envname("SPA_OUT");
  sub.add_option("--timeout", cfg.timeout, "Per-circuit time limit in seconds")
      ->check(CLI::NonNegativeNumber)
      ->envname("SPA_TIMEOUT");
  sub.add_option("--oracle-limit", cfg.oracle_limit, "Largest graph handed to the exact oracles")
      ->check(CLI::Range(0, 24))
      ->envname("SPA_ORACLE_LIMIT");
  sub.add_option("--jobs", cfg.jobs, "Circuits processed concurrently")->envname("SPA_JOBS");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Structural parameters of circuit graphs for clustering and conditioning", "spa"};
  app.require_subcommand(1);

  auto* parse = app.add_subcommand("parse", "Print node and moral-edge counts of a netlist");
  parse->add_option("inputs", cfg.inputs, "Netlist file")->required();
  parse->add_flag("--dag", cfg.dag_dump, "Print the canonical DAG dump instead");

  auto* analyze = app.add_subcommand("analyze", "Structural table rows (orderings, cutset, hybrid)");
  auto* tradeoff = app.add_subcommand("tradeoff", "Secondary join-tree series");
  auto* histogram = app.add_subcommand("histogram", "Clique, sepset and cutset size histograms");
  auto* tree = app.add_subcommand("tree", "Join-tree rendering (DOT, or JSON with --format json)");
  auto* verify = app.add_subcommand("verify", "Invariant suite; exit 2 on a violation");
  for (auto* sub : {analyze, tradeoff, histogram, tree, verify}) add_run_options(*sub, cfg);
  tree->add_flag("--dot", cfg.dot, "Write DOT regardless of --format");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Session session(cfg, out, err);
  try {
    if (*parse) return session.parse();
    if (*analyze) return session.analyze();
    if (*tradeoff) return session.tradeoff();
    if (*histogram) return session.histogram();
    if (*tree) return session.tree();
    return session.verify();
  } catch (const std::exception& e) {
    err << "spa: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace spa::cli
