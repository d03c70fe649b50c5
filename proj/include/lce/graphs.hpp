#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lce/graphication.hpp"
#include "lce/union_find.hpp"

namespace lce {

// Interaction graph of a bracketting: black vertices carry support labels,
// white vertices carry the local part of a slot, grey vertices stand for
// nonlocal generator occurrences. Noncommutative slots order the edges at
// their white vertex.
struct InteractionGraph {
  enum class VertexKind { black, white, grey };
  struct VertexRef {
    VertexKind kind;
    std::size_t index;
    friend bool operator==(const VertexRef& a, const VertexRef& b) {
      return a.kind == b.kind && a.index == b.index;
    }
  };
  struct Edge {
    VertexRef a, b;
    int color;  // field index; 0 on slot-cohesion edges
    int order;  // position at the white vertex in word order; -1 when not ordered
    bool wavy;  // nonlocal attachment
  };

  Mode mode = Mode::commutative;
  std::vector<int> black_labels;         // sorted support labels
  std::vector<int> white_slot;           // owning slot index per white vertex
  std::vector<Monomial> white_local;     // local part per white vertex
  std::vector<int> grey_fields;          // field index per nonlocal occurrence
  std::vector<Edge> edges;
  Bracketting origin{Mode::commutative};
  bool mixed_nonlocal_slot = false;  // a slot mixes a nonlocal factor with others

  std::size_t vertex_count() const {
    return black_labels.size() + white_local.size() + grey_fields.size();
  }
};

// Builds the interaction graph. Edge choices that the drawing rules leave
// free are made in canonical order; only the isomorphism class matters.
inline InteractionGraph build_graph(const Bracketting& gamma) {
  InteractionGraph g;
  g.mode = gamma.mode();
  g.origin = gamma;
  g.black_labels = gamma.support();
  std::map<int, std::size_t> black_index;
  for (std::size_t i = 0; i < g.black_labels.size(); ++i)
    black_index[g.black_labels[i]] = i;

  for (std::size_t slot_idx = 0; slot_idx < gamma.slots().size(); ++slot_idx) {
    const Monomial& slot = gamma.slots()[slot_idx];
    bool has_local = false, has_nonlocal = false;
    for (const auto& gen : slot.gens()) (gen.local() ? has_local : has_nonlocal) = true;
    if (has_nonlocal && slot.degree() > 1) g.mixed_nonlocal_slot = true;

    std::vector<InteractionGraph::VertexRef> attachments;
    if (has_local) {
      std::vector<Generator> local;
      for (const auto& gen : slot.gens())
        if (gen.local()) local.push_back(gen);
      std::size_t w = g.white_local.size();
      g.white_slot.push_back(static_cast<int>(slot_idx));
      g.white_local.emplace_back(slot.mode(), local);
      attachments.push_back({InteractionGraph::VertexKind::white, w});
      int order = 0;
      for (const auto& gen : slot.gens()) {
        if (!gen.local()) continue;
        g.edges.push_back({{InteractionGraph::VertexKind::black, black_index.at(gen.labels[0])},
                           {InteractionGraph::VertexKind::white, w},
                           gen.field,
                           g.mode == Mode::noncommutative ? order : -1,
                           false});
        ++order;
      }
    }
    for (const auto& gen : slot.gens()) {
      if (gen.local()) continue;
      std::size_t gr = g.grey_fields.size();
      g.grey_fields.push_back(gen.field);
      attachments.push_back({InteractionGraph::VertexKind::grey, gr});
      for (int label : gen.labels)
        g.edges.push_back({{InteractionGraph::VertexKind::black, black_index.at(label)},
                           {InteractionGraph::VertexKind::grey, gr},
                           gen.field,
                           -1,
                           true});
    }
    // a slot is one interaction: tie its attachment vertices together when the
    // drawing splits it over several
    for (std::size_t i = 1; i < attachments.size(); ++i)
      g.edges.push_back({attachments[0], attachments[i], 0, -1, true});
  }
  return g;
}

// Connected factors of a bracketting: components of the hypergraph on the
// support with one hyperedge per slot support.
struct ComponentDecomposition {
  struct Part {
    Bracketting bracketting;
    std::vector<int> support;
  };
  std::vector<Part> parts;
};

inline ComponentDecomposition connected_components(const Bracketting& gamma) {
  ComponentDecomposition out;
  auto support = gamma.support();
  if (support.empty()) return out;
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = i;
  UnionFind uf(support.size());
  for (const auto& slot : gamma.slots()) {
    auto s = slot.support();
    for (std::size_t i = 1; i < s.size(); ++i) uf.merge(index.at(s[0]), index.at(s[i]));
  }
  std::map<std::size_t, std::size_t> part_of_root;  // root -> part index, by min label
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::size_t root = uf.find(i);
    if (!part_of_root.count(root)) {
      part_of_root[root] = out.parts.size();
      out.parts.push_back({Bracketting(gamma.mode()), {}});
    }
    out.parts[part_of_root[root]].support.push_back(support[i]);
  }
  std::vector<std::vector<Monomial>> slots_per_part(out.parts.size());
  for (const auto& slot : gamma.slots()) {
    std::size_t root = uf.find(index.at(slot.support()[0]));
    slots_per_part[part_of_root.at(root)].push_back(slot);
  }
  for (std::size_t p = 0; p < out.parts.size(); ++p)
    out.parts[p].bracketting = Bracketting(gamma.mode(), std::move(slots_per_part[p]));
  return out;
}

inline bool is_connected(const Bracketting& gamma) {
  return connected_components(gamma).parts.size() == 1;
}

// Component count of the built graph itself; the tested equivalence is that
// this always matches the hypergraph decomposition above.
inline std::size_t graph_component_count(const InteractionGraph& g) {
  std::size_t nb = g.black_labels.size(), nw = g.white_local.size();
  auto flat = [&](const InteractionGraph::VertexRef& v) {
    switch (v.kind) {
      case InteractionGraph::VertexKind::black: return v.index;
      case InteractionGraph::VertexKind::white: return nb + v.index;
      default: return nb + nw + v.index;
    }
  };
  UnionFind uf(g.vertex_count());
  for (const auto& e : g.edges) uf.merge(flat(e.a), flat(e.b));
  return uf.count();
}

namespace detail {

inline std::string dot_vertex_name(const InteractionGraph& g,
                                   const InteractionGraph::VertexRef& v) {
  switch (v.kind) {
    case InteractionGraph::VertexKind::black:
      return "b" + std::to_string(g.black_labels[v.index]);
    case InteractionGraph::VertexKind::white:
      return "w" + std::to_string(g.white_slot[v.index]);
    default:
      return "g" + std::to_string(v.index);
  }
}

}  // namespace detail

// Undirected DOT rendering. Plain edges use the set19 colorscheme so the
// color attribute is literally the field index; wavy edges are dashed. The
// local order at a white vertex appears as edge labels a, b, c, ...
inline std::string to_dot(const InteractionGraph& g) {
  std::ostringstream os;
  os << "graph interaction {\n";
  os << "  node [shape=circle];\n";
  for (int label : g.black_labels)
    os << "  b" << label << " [style=filled, fillcolor=black, fontcolor=white, label=\"x"
       << label << "\"];\n";
  for (std::size_t i = 0; i < g.white_local.size(); ++i)
    os << "  w" << g.white_slot[i] << " [style=filled, fillcolor=white, label=\"\"];\n";
  for (std::size_t i = 0; i < g.grey_fields.size(); ++i)
    os << "  g" << i << " [style=filled, fillcolor=gray, label=\"" << g.grey_fields[i]
       << "\"];\n";
  for (const auto& e : g.edges) {
    os << "  " << detail::dot_vertex_name(g, e.a) << " -- " << detail::dot_vertex_name(g, e.b);
    std::vector<std::string> attrs;
    if (e.wavy) {
      attrs.push_back("style=dashed");
    } else {
      attrs.push_back("colorscheme=set19");
      attrs.push_back("color=" + std::to_string((e.color - 1) % 9 + 1));
    }
    if (e.order >= 0)
      attrs.push_back("label=\"" + std::string(1, static_cast<char>('a' + e.order % 26)) +
                      "\"");
    os << " [";
    for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace lce
