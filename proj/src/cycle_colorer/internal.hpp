#pragma once

// Shared machinery of the structured C_k / C_k-free solvers.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclecert/cycle_colorer.hpp"
#include "cyclecert/hom.hpp"

namespace cyclecert::detail {

// A structural step did not behave as the case analysis predicts. The caller
// flags the instance and answers with the exact fallback instead.
class LemmaGap : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline int mod(int a, int m) { return ((a % m) + m) % m; }

VertexSubset set_union(const VertexSubset& a, const VertexSubset& b);

// Per-vertex admissible colours with the set of non-cycle vertices that, together
// with C, imply them. C vertices carry an empty forcing set.
class ForcedColorLedger {
public:
  ForcedColorLedger(const Graph& g, const TargetGraph& h);

  void fix_cycle(Vertex v, int color);
  // Options derived from C alone; forcing set {v}.
  void set_options(Vertex v, ColorSet options);
  // Choice without a certificate (default colours, free vertices).
  void choose(Vertex v, int color);

  // Intersects v's options with mask; the forcing sets of `because` are merged
  // into v's when this removes something. Returns false on an empty domain and
  // records the conflict set.
  bool restrict(Vertex v, ColorSet mask, std::span<const Vertex> because);

  // Arc consistency from `seeds` over edges between known vertices accepted by
  // `accept(u, w)`. Tracks chain depth: a vertex narrowed by u gets depth(u)+1.
  template <class Accept>
  bool propagate(std::vector<Vertex> seeds, Accept accept);

  bool known(Vertex v) const { return known_[idx(v)]; }
  ColorSet options(Vertex v) const { return options_[idx(v)]; }
  bool is_fixed(Vertex v) const { return known(v) && color_count(options(v)) == 1; }
  int color(Vertex v) const { return lowest_color(options(v)); }
  const VertexSubset& forcing(Vertex v) const { return forcing_[idx(v)]; }
  int depth(Vertex v) const { return depth_[idx(v)]; }
  Vertex cause(Vertex v) const { return cause_[idx(v)]; }
  void reset_depths();

  const std::optional<VertexSubset>& conflict() const { return conflict_; }
  ColorSet support(ColorSet options) const;
  const TargetGraph& target() const { return h_; }

private:
  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

  const Graph& g_;
  const TargetGraph& h_;
  std::vector<char> known_;
  std::vector<ColorSet> options_;
  std::vector<VertexSubset> forcing_;
  std::vector<int> depth_;
  std::vector<Vertex> cause_;
  std::optional<VertexSubset> conflict_;
};

template <class Accept>
bool ForcedColorLedger::propagate(std::vector<Vertex> seeds, Accept accept) {
  std::vector<char> queued(known_.size(), 0);
  for (Vertex s : seeds) queued[idx(s)] = 1;
  for (std::size_t head = 0; head < seeds.size(); ++head) {
    const Vertex u = seeds[head];
    queued[idx(u)] = 0;
    if (!known(u)) continue;
    const ColorSet sup = support(options(u));
    for (Vertex w : g_.neighbors(u)) {
      if (!known(w) || !accept(u, w)) continue;
      const ColorSet before = options(w);
      const Vertex because[] = {u};
      if (!restrict(w, sup, because)) return false;
      if (options(w) != before) {
        depth_[idx(w)] = std::max(depth_[idx(w)], depth_[idx(u)] + 1);
        cause_[idx(w)] = u;
        if (!queued[idx(w)]) {
          queued[idx(w)] = 1;
          seeds.push_back(w);
        }
      }
    }
  }
  return true;
}

// Colouring of a G - S component M through the edge M' = (x, y) (or the single
// vertex) and one representative per T colour adjacent to it. Returns the
// vertices beyond C of a forbidding subgraph on failure.
std::optional<VertexSubset> resolve_outside_component(const Graph& g, const NeighborClassification& cls,
                                                      ForcedColorLedger& ledger, const VertexSubset& comp);

// Connected components of G - S, each ascending, ordered by smallest vertex.
std::vector<VertexSubset> outside_components(const Graph& g, const NeighborClassification& cls);

// Best available evidence that G[vertices] is not P_k-free: an induced P_k,
// else a short odd cycle, else the vertices themselves.
NotPkFree structural_violation(const Graph& g, const std::string& what, const VertexSubset& vertices, int k);

// Sorts the vertex set, attaches the reason's bound, re-verifies it with the
// exact oracle, and shrinks it below the bound by deletion if needed.
Witness finish_witness(const Graph& g, int k, VertexSubset vertices, WitnessReason reason,
                       std::vector<std::string>& flags);

CycleColoring coloring_from_ledger(const Graph& g, int k, const ForcedColorLedger& ledger);

}  // namespace cyclecert::detail
