#include <algorithm>
#include <iterator>

#include "cyclecert/graph_search.hpp"
#include "internal.hpp"

namespace cyclecert::detail {

VertexSubset set_union(const VertexSubset& a, const VertexSubset& b) {
  VertexSubset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ForcedColorLedger::ForcedColorLedger(const Graph& g, const TargetGraph& h)
    : g_(g),
      h_(h),
      known_(static_cast<std::size_t>(g.order()), 0),
      options_(static_cast<std::size_t>(g.order()), 0),
      forcing_(static_cast<std::size_t>(g.order())),
      depth_(static_cast<std::size_t>(g.order()), 0),
      cause_(static_cast<std::size_t>(g.order()), -1) {}

void ForcedColorLedger::fix_cycle(Vertex v, int color) {
  known_[idx(v)] = 1;
  options_[idx(v)] = color_bit(color);
  forcing_[idx(v)].clear();
}

void ForcedColorLedger::set_options(Vertex v, ColorSet options) {
  known_[idx(v)] = 1;
  options_[idx(v)] = options;
  forcing_[idx(v)] = {v};
}

void ForcedColorLedger::choose(Vertex v, int color) {
  if (!known(v)) forcing_[idx(v)] = {v};
  known_[idx(v)] = 1;
  options_[idx(v)] = color_bit(color);
}

bool ForcedColorLedger::restrict(Vertex v, ColorSet mask, std::span<const Vertex> because) {
  const ColorSet narrowed = options(v) & mask;
  if (narrowed == options(v)) return true;
  for (Vertex b : because) forcing_[idx(v)] = set_union(forcing_[idx(v)], forcing(b));
  if (narrowed == 0) {
    conflict_ = forcing(v);
    return false;
  }
  options_[idx(v)] = narrowed;
  return true;
}

void ForcedColorLedger::reset_depths() {
  std::fill(depth_.begin(), depth_.end(), 0);
  std::fill(cause_.begin(), cause_.end(), -1);
}

ColorSet ForcedColorLedger::support(ColorSet options) const {
  ColorSet s = 0;
  for (; options; options &= options - 1) s |= h_.neighbors(lowest_color(options));
  return s;
}

std::vector<VertexSubset> outside_components(const Graph& g, const NeighborClassification& cls) {
  std::vector<VertexSubset> comps;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (Vertex s : cls.outside) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    VertexSubset comp{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Vertex w : g.neighbors(comp[head]))
        if (!cls.in_s(w) && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

NotPkFree structural_violation(const Graph& g, const std::string& what, const VertexSubset& vertices, int k) {
  VertexSubset sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() <= 48) {
    Graph sub = induced_subgraph(g, sorted);
    try {
      if (auto path = find_induced_path(sub, k, SearchBudget{2'000'000, 0})) {
        VertexSubset host;
        for (Vertex v : *path) host.push_back(sorted[static_cast<std::size_t>(v)]);
        return NotPkFree(what, host, true);
      }
    } catch (const SearchBudgetExceeded&) {
    }
    if (auto odd = shortest_odd_cycle(sub); odd && odd->length() < k - 2) {
      VertexSubset host;
      for (Vertex v : odd->vertices) host.push_back(sorted[static_cast<std::size_t>(v)]);
      return NotPkFree(what + " (short odd cycle)", host, false);
    }
  }
  return NotPkFree(what, sorted, false);
}

std::optional<VertexSubset> resolve_outside_component(const Graph& g, const NeighborClassification& cls,
                                                      ForcedColorLedger& ledger, const VertexSubset& comp) {
  const int k = cls.cycle_case == CycleCase::ck ? cls.cycle_length() : cls.cycle_length() + 2;
  const TargetGraph& h = ledger.target();
  auto s_neighbors = [&](Vertex u) {
    VertexSubset out;
    for (Vertex w : g.neighbors(u))
      if (cls.in_s(w)) out.push_back(w);
    return out;
  };
  for (Vertex u : comp)
    for (Vertex w : s_neighbors(u)) {
      if (cls.kind[static_cast<std::size_t>(w)] != NeighborKind::ttype) {
        VertexSubset ev = cls.cycle.vertices;
        ev.push_back(u);
        ev.push_back(w);
        throw structural_violation(g, "vertex of G - S adjacent to a non-T vertex of S", ev, k);
      }
      if (!ledger.is_fixed(w)) throw LemmaGap("T vertex without a determined colour next to G - S");
    }

  const Vertex x = comp.front();
  std::optional<Vertex> y;
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  if (comp.size() >= 2) {
    // Bipartite, and each side shares one S-neighbourhood.
    side[static_cast<std::size_t>(x)] = 0;
    VertexSubset order{x};
    for (std::size_t head = 0; head < order.size(); ++head) {
      Vertex u = order[head];
      for (Vertex w : g.neighbors(u)) {
        if (cls.in_s(w)) continue;
        int& sw = side[static_cast<std::size_t>(w)];
        if (sw == -1) {
          sw = 1 - side[static_cast<std::size_t>(u)];
          order.push_back(w);
        } else if (sw == side[static_cast<std::size_t>(u)]) {
          VertexSubset ev = cls.cycle.vertices;
          ev.insert(ev.end(), comp.begin(), comp.end());
          throw structural_violation(g, "non-bipartite component in G - S", ev, k);
        }
      }
    }
    for (Vertex w : g.neighbors(x))
      if (!cls.in_s(w)) {
        y = w;
        break;
      }
    const VertexSubset nx = s_neighbors(x), ny = s_neighbors(*y);
    for (Vertex u : comp) {
      const VertexSubset& expect = side[static_cast<std::size_t>(u)] == 0 ? nx : ny;
      if (s_neighbors(u) != expect) {
        VertexSubset ev = cls.cycle.vertices;
        ev.insert(ev.end(), comp.begin(), comp.end());
        for (Vertex w : set_union(expect, s_neighbors(u))) ev.push_back(w);
        throw structural_violation(g, "same-side vertices of a G - S component see different T vertices", ev, k);
      }
    }
  }

  VertexSubset ends{x};
  if (y) ends.push_back(*y);
  // One representative per (endpoint, colour).
  std::vector<std::pair<Vertex, Vertex>> reps;  // (endpoint, T vertex)
  for (Vertex e : ends) {
    ColorSet seen = 0;
    for (Vertex t : s_neighbors(e)) {
      const int c = ledger.color(t);
      if ((seen >> c) & 1u) continue;
      seen |= color_bit(c);
      reps.emplace_back(e, t);
    }
  }
  auto allowed = [&](Vertex e, const std::vector<char>& active) {
    ColorSet a = h.all_colors();
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (active[i] && reps[i].first == e) a &= h.neighbors(ledger.color(reps[i].second));
    return a;
  };
  auto solve = [&](const std::vector<char>& active) -> std::optional<std::pair<int, int>> {
    const ColorSet ax = allowed(x, active);
    if (!y) {
      if (ax == 0) return std::nullopt;
      return std::make_pair(lowest_color(ax), -1);
    }
    const ColorSet ay = allowed(*y, active);
    for (ColorSet s = ax; s; s &= s - 1) {
      const int a = lowest_color(s);
      if (ColorSet b = ay & h.neighbors(a)) return std::make_pair(a, lowest_color(b));
    }
    return std::nullopt;
  };

  std::vector<char> active(reps.size(), 1);
  if (auto colors = solve(active)) {
    for (Vertex u : comp)
      ledger.choose(u, side[static_cast<std::size_t>(u)] == 1 ? colors->second : colors->first);
    return std::nullopt;
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    active[i] = 0;
    if (solve(active)) active[i] = 1;
  }
  VertexSubset fragment = ends;
  std::sort(fragment.begin(), fragment.end());
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (active[i]) fragment = set_union(fragment, set_union({reps[i].second}, ledger.forcing(reps[i].second)));
  return fragment;
}

CycleColoring coloring_from_ledger(const Graph& g, int k, const ForcedColorLedger& ledger) {
  CycleColoring c{k, std::vector<int>(static_cast<std::size_t>(g.order()), 0)};
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!ledger.is_fixed(v)) throw LemmaGap("vertex " + std::to_string(v) + " left without a colour");
    c.residues[static_cast<std::size_t>(v)] = ledger.color(v);
  }
  if (!verify_cycle_coloring(g, c)) throw LemmaGap("structured extension produced an invalid colouring");
  return c;
}

Witness finish_witness(const Graph& g, int k, VertexSubset vertices, WitnessReason reason,
                       std::vector<std::string>& flags) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Witness w;
  w.vertices = std::move(vertices);
  w.reason = reason;
  w.size_bound = reason_bound(reason, k);
  if (!oracle_confirms_witness(g, k, w))
    throw LemmaGap(std::string("assembled ") + std::string(reason_name(reason)) + " witness is colourable");
  if (w.size_bound && static_cast<int>(w.vertices.size()) > *w.size_bound) {
    auto shrunk = minimize_witness(g, k, w);
    w = shrunk.witness;
    flags.push_back("witness-shrunk-to-bound");
  }
  return w;
}

}  // namespace cyclecert::detail
