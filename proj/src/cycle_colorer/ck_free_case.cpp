// Base cycle C is an induced C_{k-2}; its colouring is unique up to
// automorphisms, so c(v_i) = i. T_i is forced to i+1, D_i keeps {i-1, i+1}
// until something narrows it.

#include <algorithm>

#include "internal.hpp"

namespace cyclecert {

using detail::ForcedColorLedger;
using detail::LemmaGap;
using detail::mod;

namespace {

struct Stage {
  const Graph& g;
  int k;
  const NeighborClassification& cls;
  ForcedColorLedger& ledger;

  NeighborKind kind(Vertex v) const { return cls.kind[static_cast<std::size_t>(v)]; }
  int anchor(Vertex v) const { return cls.anchor[static_cast<std::size_t>(v)]; }

  bool chain_edge(Vertex u, Vertex w) const {
    if (kind(u) != NeighborKind::dtype || kind(w) != NeighborKind::dtype) return false;
    const int diff = mod(anchor(w) - anchor(u), k - 2);
    return diff == 1 || diff == k - 3;
  }
};

Witness conflict_witness(const Graph& g, int k, const NeighborClassification& cls, const VertexSubset& conflict,
                         WitnessReason reason, std::vector<std::string>& flags) {
  VertexSubset w = cls.cycle.vertices;
  w.insert(w.end(), conflict.begin(), conflict.end());
  return detail::finish_witness(g, k, w, reason, flags);
}

// Colour of a vertex v of a single-vertex component of G - S. Returns false on
// a conflict.
bool settle_single(Stage& st, Vertex v) {
  ForcedColorLedger& ledger = st.ledger;
  const TargetGraph& h = ledger.target();
  ledger.set_options(v, h.all_colors());
  for (Vertex w : st.g.neighbors(v)) {
    if (!ledger.known(w)) continue;
    const Vertex because[] = {w};
    if (!ledger.restrict(v, ledger.support(ledger.options(w)), because)) return false;
  }
  if (!ledger.is_fixed(v)) {
    // A colour compatible with every remaining option of every neighbour loses nothing.
    for (ColorSet s = ledger.options(v); s; s &= s - 1) {
      const int c = lowest_color(s);
      bool safe = true;
      for (Vertex w : st.g.neighbors(v))
        if (ledger.known(w) && (ledger.options(w) & ~h.neighbors(c))) safe = false;
      if (safe) {
        ledger.choose(v, c);
        return true;
      }
    }
    throw LemmaGap("single vertex " + std::to_string(v) + " of G - S has no neutral colour");
  }
  return ledger.propagate({v}, [&](Vertex a, Vertex b) { return !st.chain_edge(a, b); });
}

// Walks the cause chain back from a vertex whose propagation depth exceeds
// k - 2; along such a chain the input holds an induced P_k.
void check_chain_depth(const Stage& st) {
  for (Vertex v = 0; v < st.g.order(); ++v) {
    if (st.ledger.depth(v) <= st.k - 2) continue;
    VertexSubset chain{v};
    while (static_cast<int>(chain.size()) < st.k && st.ledger.cause(chain.back()) != -1)
      chain.push_back(st.ledger.cause(chain.back()));
    if (static_cast<int>(chain.size()) == st.k && is_induced_path_in(st.g, chain))
      throw NotPkFree("forcing chain among D vertices longer than k - 2", chain, true);
    VertexSubset ev = st.cls.cycle.vertices;
    ev.insert(ev.end(), chain.begin(), chain.end());
    throw detail::structural_violation(st.g, "forcing chain among D vertices longer than k - 2", ev, st.k);
  }
}

}  // namespace

CaseResult solve_ck_free_case(const Graph& g, int k, const NeighborClassification& cls) {
  if (cls.cycle_case != CycleCase::ck2 || cls.cycle_length() != k - 2)
    throw std::invalid_argument("classification is not relative to an induced C_{k-2}");
  const int m = k - 2;
  const TargetGraph h = TargetGraph::cycle(m);
  ForcedColorLedger ledger(g, h);
  Stage st{g, k, cls, ledger};
  CaseResult out;

  for (int i = 0; i < m; ++i) ledger.fix_cycle(cls.cycle.at(i), i);
  VertexSubset s_vertices, d_vertices;
  for (int i = 0; i < m; ++i) {
    for (Vertex v : cls.t[static_cast<std::size_t>(i)]) {
      ledger.set_options(v, color_bit(mod(i + 1, m)));
      s_vertices.push_back(v);
    }
    for (Vertex v : cls.d[static_cast<std::size_t>(i)]) {
      ledger.set_options(v, color_bit(mod(i - 1, m)) | color_bit(mod(i + 1, m)));
      s_vertices.push_back(v);
      d_vertices.push_back(v);
    }
  }

  auto not_chain = [&](Vertex u, Vertex w) { return !st.chain_edge(u, w); };
  if (!ledger.propagate(s_vertices, not_chain)) {
    out.result = conflict_witness(g, k, cls, *ledger.conflict(), WitnessReason::FixedColoringConflict, out.flags);
    return out;
  }

  std::vector<VertexSubset> singles;
  for (const auto& comp : detail::outside_components(g, cls)) {
    if (comp.size() == 1) {
      singles.push_back(comp);
      continue;
    }
    if (auto fragment = detail::resolve_outside_component(g, cls, ledger, comp)) {
      out.result = conflict_witness(g, k, cls, *fragment, WitnessReason::ComponentConflict, out.flags);
      return out;
    }
  }

  for (const auto& comp : singles)
    if (!settle_single(st, comp.front())) {
      out.result = conflict_witness(g, k, cls, *ledger.conflict(), WitnessReason::ComponentConflict, out.flags);
      return out;
    }

  // Small colour moves forward along D_i - D_{i+1}, big colour moves back.
  ledger.reset_depths();
  VertexSubset seeds;
  for (Vertex v : d_vertices)
    if (ledger.is_fixed(v)) seeds.push_back(v);
  std::stable_sort(seeds.begin(), seeds.end(), [&](Vertex a, Vertex b) { return st.anchor(a) < st.anchor(b); });
  const bool ok = ledger.propagate(seeds, [&](Vertex u, Vertex w) { return st.chain_edge(u, w); });
  check_chain_depth(st);
  VertexSubset all_known;
  for (Vertex v = 0; v < g.order(); ++v)
    if (ledger.known(v)) all_known.push_back(v);
  if (!ok || !ledger.propagate(all_known, [](Vertex, Vertex) { return true; })) {
    out.result = conflict_witness(g, k, cls, *ledger.conflict(), WitnessReason::PropagationConflict, out.flags);
    return out;
  }

  for (Vertex v : d_vertices)
    if (!ledger.is_fixed(v)) ledger.choose(v, mod(st.anchor(v) - 1, m));
  out.result = detail::coloring_from_ledger(g, k, ledger);
  return out;
}

}  // namespace cyclecert
