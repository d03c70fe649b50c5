#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lce/graphs.hpp"

#include <regex>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace lce;
using lcetest::g;
using lcetest::mono;

namespace {

constexpr Mode C = Mode::commutative;
constexpr Mode N = Mode::noncommutative;

Bracketting local_example() {
  Monomial s1 = mono(C, {g(1, {1}), g(1, {2}), g(1, {2})});
  Monomial s2 = mono(C, {g(2, {1}), g(2, {1}), g(1, {2}), g(1, {2}), g(2, {3})});
  Monomial s3 = mono(C, {g(3, {1}), g(3, {2}), g(3, {3})});
  return Bracketting(C, {s1, s2, s3});
}

Bracketting nonlocal_example() {
  Monomial s1 = mono(C, {g(1, {1}), g(1, {2}), g(1, {2})});
  Monomial s2 = mono(C, {g(2, {1}), g(2, {1}), g(1, {2}), g(1, {2}), g(2, {3})});
  Monomial s3 = mono(C, {g(3, {1, 2, 3})});
  return Bracketting(C, {s1, s2, s3});
}

Bracketting word_example() {
  Monomial s1 = mono(N, {g(1, {2}), g(1, {1}), g(1, {2})});
  Monomial s2 = mono(N, {g(2, {1}), g(1, {2}), g(2, {3}), g(1, {2}), g(2, {1})});
  Monomial s3 = mono(N, {g(3, {3}), g(3, {1}), g(3, {2})});
  return Bracketting(N, {s1, s2, s3});
}

// Minimal checker for the DOT subset the engine emits:
//   graph ID { node [attrs]; name [attrs]; name -- name [attrs]; }
bool dot_parses(const std::string& text, int* node_stmts = nullptr, int* edge_stmts = nullptr) {
  static const std::regex header(R"(^graph [A-Za-z_][A-Za-z0-9_]* \{$)");
  static const std::regex node_stmt(R"(^  [A-Za-z_][A-Za-z0-9_]* \[[^\[\]]*\];$)");
  static const std::regex edge_stmt(
      R"(^  [A-Za-z_][A-Za-z0-9_]* -- [A-Za-z_][A-Za-z0-9_]*( \[[^\[\]]*\])?;$)");
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) return false;  // must end with a newline
  if (lines.size() < 2) return false;
  if (!std::regex_match(lines.front(), header)) return false;
  if (lines.back() != "}") return false;
  int nodes = 0, edges = 0;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    if (std::regex_match(lines[i], edge_stmt)) {
      ++edges;
    } else if (std::regex_match(lines[i], node_stmt)) {
      ++nodes;
    } else {
      return false;
    }
    // quotes must balance
    if (std::count(lines[i].begin(), lines[i].end(), '"') % 2 != 0) return false;
  }
  if (node_stmts) *node_stmts = nodes;
  if (edge_stmts) *edge_stmts = edges;
  return true;
}

int count_edges_at_label(const InteractionGraph& gr, int label, int color) {
  std::size_t idx = static_cast<std::size_t>(
      std::find(gr.black_labels.begin(), gr.black_labels.end(), label) - gr.black_labels.begin());
  int n = 0;
  for (const auto& e : gr.edges) {
    bool at_black = (e.a.kind == InteractionGraph::VertexKind::black && e.a.index == idx) ||
                    (e.b.kind == InteractionGraph::VertexKind::black && e.b.index == idx);
    if (at_black && (color == 0 || e.color == color)) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("bipartite census of a three-slot bracketting") {
  InteractionGraph gr = build_graph(local_example());
  CHECK(gr.black_labels == std::vector<int>{1, 2, 3});
  CHECK(gr.white_local.size() == 3);
  CHECK(gr.grey_fields.empty());
  CHECK(!gr.mixed_nonlocal_slot);

  // x1 carries one 1-colored, two 2-colored and one 3-colored edge
  CHECK(count_edges_at_label(gr, 1, 0) == 4);
  CHECK(count_edges_at_label(gr, 1, 1) == 1);
  CHECK(count_edges_at_label(gr, 1, 2) == 2);
  CHECK(count_edges_at_label(gr, 1, 3) == 1);

  // per-label edge endpoints equal the bracketting degrees
  for (int label : {1, 2, 3})
    CHECK(count_edges_at_label(gr, label, 0) == local_example().degree_at(label));

  // total edge count = sum of the degrees d_i
  int total = 0;
  for (int label : {1, 2, 3}) total += local_example().degree_at(label);
  CHECK(total == 11);
  CHECK(gr.edges.size() == 11);
}

TEST_CASE("tripartite census with a nonlocal slot") {
  InteractionGraph gr = build_graph(nonlocal_example());
  CHECK(gr.black_labels == std::vector<int>{1, 2, 3});
  CHECK(gr.white_local.size() == 2);  // the nonlocal slot has no white vertex
  CHECK(gr.grey_fields == std::vector<int>{3});
  CHECK(!gr.mixed_nonlocal_slot);

  // the grey vertex reaches every label through wavy edges
  int wavy = 0;
  for (const auto& e : gr.edges)
    if (e.wavy) ++wavy;
  CHECK(wavy == 3);

  int total = 0;
  for (int label : {1, 2, 3}) total += nonlocal_example().degree_at(label);
  CHECK(total == 11);
  CHECK(gr.edges.size() == 11);
  CHECK(graph_component_count(gr) == 1);
}

TEST_CASE("single generator graph") {
  InteractionGraph gr = build_graph(Bracketting(C, {mono(C, {g(1, {1})})}));
  CHECK(gr.black_labels.size() == 1);
  CHECK(gr.white_local.size() == 1);
  CHECK(gr.edges.size() == 1);
  int nodes = 0, edges = 0;
  CHECK(dot_parses(to_dot(gr), &nodes, &edges));
  CHECK(nodes == 3);  // the shared "node [shape=circle]" default plus 2 vertices
  CHECK(edges == 1);
}

TEST_CASE("noncommutative local order follows the word") {
  Bracketting gamma = word_example();
  InteractionGraph gr = build_graph(gamma);
  REQUIRE(gr.white_local.size() == 3);
  // for each slot, read edges at its white vertex back in order
  for (std::size_t w = 0; w < gr.white_local.size(); ++w) {
    const Monomial& slot = gamma.slots()[static_cast<std::size_t>(gr.white_slot[w])];
    std::vector<std::pair<int, std::pair<int, int>>> found;  // order -> (label, color)
    for (const auto& e : gr.edges) {
      if (e.b.kind == InteractionGraph::VertexKind::white && e.b.index == w) {
        REQUIRE(e.a.kind == InteractionGraph::VertexKind::black);
        found.push_back({e.order, {gr.black_labels[e.a.index], e.color}});
      }
    }
    std::sort(found.begin(), found.end());
    REQUIRE(found.size() == slot.gens().size());
    for (std::size_t i = 0; i < found.size(); ++i) {
      CHECK(found[i].first == static_cast<int>(i));
      CHECK(found[i].second.first == slot.gens()[i].labels[0]);
      CHECK(found[i].second.second == slot.gens()[i].field);
    }
  }
  // DOT carries the order as a/b/c labels
  std::string dot = to_dot(gr);
  CHECK(dot_parses(dot));
  CHECK(dot.find("label=\"a\"") != std::string::npos);
  CHECK(dot.find("label=\"e\"") != std::string::npos);  // the length-5 slot
}

TEST_CASE("connected components") {
  Bracketting two(C, {mono(C, {g(1, {1})}), mono(C, {g(1, {2})})});
  CHECK(connected_components(two).parts.size() == 2);

  Bracketting one(C, {mono(C, {g(1, {1}), g(1, {2})})});
  CHECK(connected_components(one).parts.size() == 1);

  CHECK(connected_components(nonlocal_example()).parts.size() == 1);
  CHECK(is_connected(nonlocal_example()));

  auto decomp = connected_components(two);
  CHECK(decomp.parts[0].support == std::vector<int>{1});
  CHECK(decomp.parts[1].support == std::vector<int>{2});
}

TEST_CASE("reassembling components reproduces the bracketting") {
  lcetest::Gen gen(53);
  for (Mode mode : {C, N}) {
    for (int t = 0; t < 30; ++t) {
      Monomial m = gen.monomial(mode, 6, 2, 4, 2, 1);
      for (const auto& [gamma, s] : graphicate(m)) {
        auto decomp = connected_components(gamma);
        Bracketting joined(mode);
        std::vector<int> all_support;
        for (const auto& part : decomp.parts) {
          joined = concat(joined, part.bracketting);
          all_support.insert(all_support.end(), part.support.begin(), part.support.end());
        }
        CHECK(joined == gamma);
        std::sort(all_support.begin(), all_support.end());
        CHECK(all_support == gamma.support());
      }
    }
  }
}

TEST_CASE("hypergraph connectivity equals built-graph connectivity") {
  lcetest::Gen gen(59);
  for (Mode mode : {C, N}) {
    for (int t = 0; t < 25; ++t) {
      Monomial m = gen.monomial(mode, 6, 2, 3, 2, 1);
      for (const auto& [gamma, s] : graphicate(m)) {
        CHECK(connected_components(gamma).parts.size() ==
              graph_component_count(build_graph(gamma)));
      }
    }
  }
}

TEST_CASE("concat with disjoint supports adds component counts") {
  lcetest::Gen gen(61);
  for (int t = 0; t < 40; ++t) {
    Monomial a = gen.monomial(C, 4, 2, 3, 1, 1);
    Monomial b0 = gen.monomial(C, 4, 2, 3, 1, 1);
    // shift b's labels clear of a's
    std::map<int, int> shift;
    for (int l : b0.support()) shift[l] = l + 10;
    Monomial b = b0.relabel(shift);
    Bracketting ga(C, {a});
    Bracketting gb(C, {b});
    auto joined = concat(ga, gb);
    CHECK(connected_components(joined).parts.size() ==
          connected_components(ga).parts.size() + connected_components(gb).parts.size());
  }
}

TEST_CASE("mixed nonlocal slots stay connected and are flagged") {
  // a slot multiplying two nonlocal generators still forms one component
  Monomial slot = mono(C, {g(1, {1, 2}), g(1, {3, 4})});
  Bracketting gamma(C, {slot});
  InteractionGraph gr = build_graph(gamma);
  CHECK(gr.mixed_nonlocal_slot);
  CHECK(connected_components(gamma).parts.size() == 1);
  CHECK(graph_component_count(gr) == 1);
  CHECK(dot_parses(to_dot(gr)));

  Monomial mixed = mono(C, {g(1, {1}), g(2, {2, 3})});
  InteractionGraph gr2 = build_graph(Bracketting(C, {mixed}));
  CHECK(gr2.mixed_nonlocal_slot);
  CHECK(gr2.white_local.size() == 1);
  CHECK(gr2.grey_fields.size() == 1);
  CHECK(graph_component_count(gr2) == 1);
}

TEST_CASE("DOT output is well formed for random brackettings") {
  lcetest::Gen gen(67);
  for (Mode mode : {C, N}) {
    for (int t = 0; t < 20; ++t) {
      Monomial m = gen.monomial(mode, 5, 3, 3, 2, 1);
      for (const auto& [gamma, s] : graphicate(m)) {
        int nodes = 0, edges = 0;
        CHECK(dot_parses(to_dot(build_graph(gamma)), &nodes, &edges));
        CHECK(edges == static_cast<int>(build_graph(gamma).edges.size()));
      }
    }
  }
}
