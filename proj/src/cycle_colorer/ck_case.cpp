// Base cycle C is an induced C_k. Every colouring of C into C_{k-2} walks
// forward k-1 times and back once, so up to automorphisms of C_{k-2} it is
// determined by where the back step sits; one T vertex or one D_i-D_{i+3} edge
// leaves at most five of those classes.

#include <algorithm>
#include <set>

#include "internal.hpp"

namespace cyclecert {

using detail::ForcedColorLedger;
using detail::LemmaGap;
using detail::mod;

namespace {

// Lexicographically least image of `seq` under the dihedral group of C_m.
std::vector<int> dihedral_canonical(const std::vector<int>& seq, int m) {
  std::vector<int> best, image(seq.size());
  for (int sign : {1, -1})
    for (int shift = 0; shift < m; ++shift) {
      for (std::size_t i = 0; i < seq.size(); ++i) image[i] = mod(sign * seq[i] + shift, m);
      if (best.empty() || image < best) best = image;
    }
  return best;
}

ColorSet options_from_cycle(const Graph& g, const NeighborClassification& cls, const TargetGraph& h,
                            const std::vector<int>& base, Vertex v) {
  ColorSet opts = h.all_colors();
  for (Vertex w : g.neighbors(v))
    if (cls.kind[static_cast<std::size_t>(w)] == NeighborKind::cycle)
      opts &= h.neighbors(base[static_cast<std::size_t>(cls.anchor[static_cast<std::size_t>(w)])]);
  return opts;
}

void require_case(const NeighborClassification& cls, int k) {
  if (cls.cycle_case != CycleCase::ck || cls.cycle_length() != k)
    throw std::invalid_argument("classification is not relative to an induced C_k");
}

}  // namespace

std::optional<CycleColoring> try_trivial_coloring(const Graph& g, int k, const NeighborClassification& cls) {
  require_case(cls, k);
  const bool has_t = std::any_of(cls.t.begin(), cls.t.end(), [](const VertexSubset& s) { return !s.empty(); });
  if (has_t || !cls.d_plus3_edges.empty() || !cls.outside.empty()) return std::nullopt;
  const auto base = enumerate_cycle_colorings(k, k - 2).front();
  CycleColoring c{k, std::vector<int>(static_cast<std::size_t>(g.order()), 0)};
  for (int i = 0; i < k; ++i) {
    c.residues[static_cast<std::size_t>(cls.cycle.at(i))] = base[static_cast<std::size_t>(i)];
    for (Vertex v : cls.d[static_cast<std::size_t>(i)])
      c.residues[static_cast<std::size_t>(v)] = base[static_cast<std::size_t>(mod(i + 1, k))];
  }
  if (!verify_cycle_coloring(g, c)) throw LemmaGap("trivial colouring rule failed");
  return c;
}

SurvivingColorings surviving_colorings(const Graph& g, int k, const NeighborClassification& cls) {
  require_case(cls, k);
  const int m = k - 2;
  std::set<std::vector<int>> classes;
  for (const auto& seq : enumerate_cycle_colorings(k, m)) classes.insert(dihedral_canonical(seq, m));

  SurvivingColorings out;
  out.classes_total = static_cast<int>(classes.size());
  Vertex first_t = -1;
  for (const auto& ti : cls.t)
    for (Vertex v : ti)
      if (first_t == -1 || v < first_t) first_t = v;
  if (first_t != -1) {
    out.extras = {first_t};
  } else if (!cls.d_plus3_edges.empty()) {
    auto key = [](const Edge& e) { return std::minmax(e.first, e.second); };
    auto it = std::min_element(cls.d_plus3_edges.begin(), cls.d_plus3_edges.end(),
                               [&](const Edge& a, const Edge& b) { return key(a) < key(b); });
    out.extras = {it->first, it->second};
  } else {
    throw std::invalid_argument("H0 needs a T vertex or a D_i-D_{i+3} edge");
  }

  VertexSubset h0 = cls.cycle.vertices;
  h0.insert(h0.end(), out.extras.begin(), out.extras.end());
  const Graph sub = induced_subgraph(g, h0);
  const TargetGraph target = TargetGraph::cycle(m);
  for (const auto& base : classes) {
    ListAssignment lists = ListAssignment::full(sub.order(), target);
    for (int i = 0; i < k; ++i) lists.lists[static_cast<std::size_t>(i)] = color_bit(base[static_cast<std::size_t>(i)]);
    if (find_hom(sub, target, lists)) out.bases.push_back(base);
  }
  return out;
}

std::variant<CycleColoring, VertexSubset> extend_fixed_coloring_ck(const Graph& g, int k,
                                                                   const NeighborClassification& cls,
                                                                   const std::vector<int>& base) {
  require_case(cls, k);
  const TargetGraph h = TargetGraph::cycle(k - 2);
  for (int i = 0; i < k; ++i)
    if (!h.adjacent(base[static_cast<std::size_t>(i)], base[static_cast<std::size_t>(mod(i + 1, k))]))
      throw std::invalid_argument("base is not a colouring of C");

  ForcedColorLedger ledger(g, h);
  for (int i = 0; i < k; ++i) ledger.fix_cycle(cls.cycle.at(i), base[static_cast<std::size_t>(i)]);

  // T and D vertices: colours admitted by their cycle neighbours. A T_i whose
  // interval carries no repeated colour admits none.
  VertexSubset s_vertices;
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto kind = cls.kind[static_cast<std::size_t>(v)];
    if (kind != NeighborKind::dtype && kind != NeighborKind::ttype) continue;
    const ColorSet opts = options_from_cycle(g, cls, h, base, v);
    if (opts == 0) return VertexSubset{v};
    ledger.set_options(v, opts);
    s_vertices.push_back(v);
  }

  // Edges between vertices whose colour is already unique.
  VertexSubset fixed;
  for (Vertex v : s_vertices)
    if (ledger.is_fixed(v)) fixed.push_back(v);
  auto both_fixed = [&](Vertex u, Vertex w) {
    return cls.kind[static_cast<std::size_t>(w)] != NeighborKind::cycle && ledger.is_fixed(u) && ledger.is_fixed(w);
  };
  if (!ledger.propagate(fixed, both_fixed)) return *ledger.conflict();

  // Two-choice D vertices (both cycle neighbours share a colour) against their
  // neighbourhood in S.
  auto within_s = [&](Vertex, Vertex w) { return cls.kind[static_cast<std::size_t>(w)] != NeighborKind::cycle; };
  if (!ledger.propagate(s_vertices, within_s)) return *ledger.conflict();

  // Remaining two-choice vertices take the other repeated colour of C.
  std::vector<int> count(static_cast<std::size_t>(k - 2), 0);
  for (int c : base) ++count[static_cast<std::size_t>(c)];
  ColorSet repeated = 0;
  for (int c = 0; c < k - 2; ++c)
    if (count[static_cast<std::size_t>(c)] > 1) repeated |= color_bit(c);
  for (Vertex v : s_vertices) {
    if (ledger.is_fixed(v)) continue;
    const ColorSet pick = ledger.options(v) & repeated;
    ledger.choose(v, lowest_color(pick ? pick : ledger.options(v)));
  }

  // Components of G - S attach to T only.
  for (const auto& comp : detail::outside_components(g, cls))
    if (auto fragment = detail::resolve_outside_component(g, cls, ledger, comp)) return *fragment;

  return detail::coloring_from_ledger(g, k, ledger);
}

CaseResult solve_ck_case(const Graph& g, int k, const NeighborClassification& cls) {
  CaseResult out;
  if (auto c = try_trivial_coloring(g, k, cls)) {
    out.result = *c;
    return out;
  }
  const SurvivingColorings sc = surviving_colorings(g, k, cls);
  if (sc.classes_total != k) throw LemmaGap("unexpected number of colouring classes of C_k");
  out.h0_survivors = static_cast<int>(sc.bases.size());
  if (sc.bases.size() > 5) throw LemmaGap("H0 leaves " + std::to_string(sc.bases.size()) + " colourings of C");

  VertexSubset witness = cls.cycle.vertices;
  witness.insert(witness.end(), sc.extras.begin(), sc.extras.end());
  for (const auto& base : sc.bases) {
    auto r = extend_fixed_coloring_ck(g, k, cls, base);
    if (auto* c = std::get_if<CycleColoring>(&r)) {
      out.result = std::move(*c);
      return out;
    }
    const auto& fragment = std::get<VertexSubset>(r);
    witness.insert(witness.end(), fragment.begin(), fragment.end());
  }
  out.result = detail::finish_witness(g, k, witness, WitnessReason::H0Exhausted, out.flags);
  return out;
}

}  // namespace cyclecert
