#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "spa/graph.hpp"
#include "spa/netlist.hpp"
#include "spa/serialize.hpp"
#include "support/data.hpp"

namespace spa {
namespace {

constexpr const char* kTinyBench = R"(# tiny
INPUT(a)
INPUT(b)
OUTPUT(y)
y = NAND(a, b)
)";

TEST(Netlist, C17BenchCounts) {
  const auto c = load_netlist(test::data_dir() / "c17.bench");
  EXPECT_EQ(c.name, "c17");
  EXPECT_EQ(c.gates.size(), 6u);
  EXPECT_EQ(c.inputs.size(), 5u);
  EXPECT_EQ(c.outputs.size(), 2u);
}

TEST(Netlist, C17IscCountsAndBranchFolding) {
  const auto c = load_netlist(test::data_dir() / "c17.isc");
  EXPECT_EQ(c.gates.size(), 6u);
  EXPECT_EQ(c.inputs.size(), 5u);
  EXPECT_EQ(c.outputs.size(), 2u);
  // Six fanout branches in the file, none survive as signals.
  EXPECT_EQ(c.signal_order.size(), 11u);
  const auto g16 = std::find_if(c.gates.begin(), c.gates.end(), [](const Gate& g) { return g.output == "16"; });
  ASSERT_NE(g16, c.gates.end());
  EXPECT_EQ(g16->fanin, (std::vector<std::string>{"2", "11"}));
}

TEST(Netlist, FormatsAgreeOnC17) {
  const auto isc = build_dag(load_netlist(test::data_dir() / "c17.isc"));
  const auto bench = build_dag(load_netlist(test::data_dir() / "c17.bench"));
  EXPECT_EQ(isc.size(), bench.size());
  EXPECT_EQ(isc.edge_count(), bench.edge_count());
  EXPECT_EQ(dag_to_json(isc), dag_to_json(bench));
}

TEST(Netlist, EmptyTextIsParseError) {
  EXPECT_THROW(parse_netlist("", NetlistFormat::bench), ParseError);
  EXPECT_THROW(parse_netlist("", NetlistFormat::isc), ParseError);
  EXPECT_THROW(parse_netlist("# only a comment\n", NetlistFormat::bench), ParseError);
}

TEST(Netlist, MalformedLineReportsLineNumber) {
  const std::string text = "INPUT(a)\nOUTPUT(y)\ny = NAND(a\n";
  try {
    parse_netlist(text, NetlistFormat::bench);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Netlist, MalformedIscLineReportsLineNumber) {
  const std::string text = "* header\n    1     1gat inpt    1   0\n  junk\n";
  try {
    parse_netlist(text, NetlistFormat::isc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Netlist, DanglingFaninNamesTheSignal) {
  const std::string text = "INPUT(a)\nOUTPUT(y)\ny = AND(a, ghost)\n";
  try {
    parse_netlist(text, NetlistFormat::bench);
    FAIL() << "expected SemanticError";
  } catch (const SemanticError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(Netlist, DeclaredCountMismatchIsSemanticError) {
  const std::string text = "# 3 inputs\nINPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n";
  EXPECT_THROW(parse_netlist(text, NetlistFormat::bench), SemanticError);
}

TEST(Netlist, SequentialElementsRejected) {
  const std::string text = "INPUT(a)\nOUTPUT(q)\nq = DFF(a)\n";
  EXPECT_THROW(parse_netlist(text, NetlistFormat::bench), SemanticError);
}

TEST(Netlist, DuplicateDefinitionRejected) {
  const std::string text = "INPUT(a)\nOUTPUT(y)\ny = NOT(a)\ny = BUFF(a)\n";
  EXPECT_THROW(parse_netlist(text, NetlistFormat::bench), SemanticError);
}

TEST(Netlist, GateFunctionsPreserved) {
  const auto c = parse_netlist("INPUT(a)\nOUTPUT(y)\nz = not(a)\ny = BUFF(z)\n", NetlistFormat::bench);
  ASSERT_EQ(c.gates.size(), 2u);
  EXPECT_EQ(c.gates[0].function, "NOT");
  EXPECT_EQ(c.gates[1].function, "BUFF");
}

TEST(Netlist, FormatFromPath) {
  EXPECT_EQ(format_from_path("x/c432.isc"), NetlistFormat::isc);
  EXPECT_EQ(format_from_path("c432.BENCH"), NetlistFormat::bench);
  EXPECT_FALSE(format_from_path("c432.v").has_value());
}

TEST(Netlist, LoadMissingFileThrows) {
  EXPECT_ANY_THROW(load_netlist(test::data_dir() / "does-not-exist.bench"));
}

TEST(Dag, SingleGate) {
  const auto dag = build_dag(parse_netlist(kTinyBench, NetlistFormat::bench, "tiny"));
  EXPECT_EQ(dag.labels(), (std::vector<std::string>{"a", "b", "y"}));
  const auto a = *dag.find("a");
  const auto b = *dag.find("b");
  const auto y = *dag.find("y");
  EXPECT_EQ(dag.edges(), (std::vector<std::pair<NodeId, NodeId>>{{a, y}, {b, y}}));
}

TEST(Dag, C17HasElevenNodes) {
  const auto c = load_netlist(test::data_dir() / "c17.bench");
  const auto dag = build_dag(c);
  EXPECT_EQ(dag.size(), 11u);
  EXPECT_EQ(dag.size(), c.gates.size() + c.inputs.size());
  EXPECT_EQ(dag.edge_count(), 12u);
}

TEST(Dag, ParentsAreFanin) {
  const auto c = load_netlist(test::data_dir() / "c17.isc");
  const auto dag = build_dag(c);
  for (const auto& g : c.gates) {
    std::vector<std::string> parents;
    for (auto p : dag.parents(*dag.find(g.output))) parents.push_back(dag.label(p));
    auto fanin = g.fanin;
    std::sort(parents.begin(), parents.end());
    std::sort(fanin.begin(), fanin.end());
    EXPECT_EQ(parents, fanin) << g.output;
  }
}

TEST(Dag, CycleIsStructuralError) {
  const std::string text = "INPUT(a)\nOUTPUT(y)\nx = AND(a, y)\ny = AND(a, x)\n";
  const auto c = parse_netlist(text, NetlistFormat::bench);
  EXPECT_THROW(build_dag(c), StructuralError);
}

TEST(Dag, TopologicalSortRespectsEdges) {
  const auto dag = build_dag(load_netlist(test::data_dir() / "c17.bench"));
  const auto order = topological_sort(dag);
  ASSERT_EQ(order.size(), dag.size());
  std::vector<std::size_t> pos(dag.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (auto [p, c] : dag.edges()) EXPECT_LT(pos[p], pos[c]);
}

TEST(Dag, BenchRoundTripIsIsomorphic) {
  for (const char* name : {"c17.isc", "c17.bench"}) {
    const auto c = load_netlist(test::data_dir() / name);
    const auto dag = build_dag(c);
    const auto again = build_dag(parse_netlist(to_bench(c), NetlistFormat::bench, c.name));
    EXPECT_EQ(dag_to_json(dag), dag_to_json(again)) << name;
    const auto reread = dag_from_json(dag_to_json(dag));
    EXPECT_EQ(dag_to_json(reread), dag_to_json(dag));
  }
}

TEST(Dag, C432Counts) {
  const auto path = test::benchmark("c432");
  if (!path) GTEST_SKIP() << "c432 netlist not in data/iscas85";
  const auto c = load_netlist(*path);
  EXPECT_EQ(c.gates.size(), 160u);
  EXPECT_EQ(c.inputs.size(), 36u);
  EXPECT_EQ(c.outputs.size(), 7u);
}

TEST(Dag, C880Counts) {
  const auto path = test::benchmark("c880");
  if (!path) GTEST_SKIP() << "c880 netlist not in data/iscas85";
  EXPECT_EQ(build_dag(load_netlist(*path)).size(), 443u);
}

TEST(Dag, BothFormatsAgreeWhenPresent) {
  for (const char* c : {"c432", "c499", "c880", "c1355", "c1908", "c2670", "c3540", "c5315",
                        "c6288", "c7552"}) {
    const auto isc = test::data_dir() / (std::string(c) + ".isc");
    const auto bench = test::data_dir() / (std::string(c) + ".bench");
    if (!std::filesystem::exists(isc) || !std::filesystem::exists(bench)) continue;
    const auto a = build_dag(load_netlist(isc));
    const auto b = build_dag(load_netlist(bench));
    EXPECT_EQ(a.size(), b.size()) << c;
    EXPECT_EQ(moralize(a).edge_count(), moralize(b).edge_count()) << c;
  }
}

}  // namespace
}  // namespace spa
