#include <algorithm>
#include <string>

#include "internal.hpp"

namespace cyclecert {

using detail::mod;

namespace {

std::string positions_text(const std::vector<int>& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "}";
}

}  // namespace

NeighborClassification classify_neighbors(const Graph& g, const CycleHandle& c, CycleCase which) {
  const int n = g.order();
  const int len = c.length();
  const int k = which == CycleCase::ck ? len : len + 2;
  if (!is_induced_cycle_in(g, c)) throw std::invalid_argument("base cycle is not an induced cycle of the graph");

  NeighborClassification cls;
  cls.cycle_case = which;
  cls.cycle = c;
  cls.kind.assign(static_cast<std::size_t>(n), NeighborKind::outside);
  cls.anchor.assign(static_cast<std::size_t>(n), -1);
  cls.d.assign(static_cast<std::size_t>(len), {});
  cls.t.assign(static_cast<std::size_t>(len), {});
  for (int i = 0; i < len; ++i) {
    cls.kind[static_cast<std::size_t>(c.at(i))] = NeighborKind::cycle;
    cls.anchor[static_cast<std::size_t>(c.at(i))] = i;
  }

  auto fwd = [len](int a, int b) { return mod(b - a, len); };
  for (Vertex v = 0; v < n; ++v) {
    if (cls.kind[static_cast<std::size_t>(v)] == NeighborKind::cycle) continue;
    std::vector<int> p;
    for (Vertex w : g.neighbors(v))
      if (cls.kind[static_cast<std::size_t>(w)] == NeighborKind::cycle) p.push_back(cls.anchor[static_cast<std::size_t>(w)]);
    std::sort(p.begin(), p.end());
    if (p.empty()) {
      cls.outside.push_back(v);
      continue;
    }
    NeighborKind kind = NeighborKind::outside;
    int anchor = -1;
    if (which == CycleCase::ck) {
      if (p.size() == 2) {
        const int a = p[0], b = p[1];
        if (fwd(a, b) == 2) kind = NeighborKind::dtype, anchor = a;
        else if (fwd(b, a) == 2) kind = NeighborKind::dtype, anchor = b;
        else if (fwd(a, b) == 4) kind = NeighborKind::ttype, anchor = a;
        else if (fwd(b, a) == 4) kind = NeighborKind::ttype, anchor = b;
      } else if (p.size() == 3) {
        for (int i : p) {
          std::vector<int> want{i, mod(i + 2, len), mod(i + 4, len)};
          std::sort(want.begin(), want.end());
          if (want == p) kind = NeighborKind::ttype, anchor = i;
        }
      }
    } else {
      if (p.size() == 1) {
        kind = NeighborKind::dtype, anchor = p[0];
      } else if (p.size() == 2) {
        if (fwd(p[0], p[1]) == 2) kind = NeighborKind::ttype, anchor = p[0];
        else if (fwd(p[1], p[0]) == 2) kind = NeighborKind::ttype, anchor = p[1];
      }
    }
    if (kind == NeighborKind::outside) {
      VertexSubset ev = c.vertices;
      ev.push_back(v);
      std::string what = "vertex " + std::to_string(v) + " attaches to the base cycle at positions " + positions_text(p);
      if (which == CycleCase::ck && p.size() == 1) {
        // v, v_i, v_{i+1}, ..., v_{i+k-2} is an induced P_k.
        VertexSubset path{v};
        for (int j = 0; j + 1 < len; ++j) path.push_back(c.at(p[0] + j));
        if (is_induced_path_in(g, path)) throw UnclassifiableNeighbor(v, what, path, true);
      }
      auto violation = detail::structural_violation(g, what, ev, k);
      throw UnclassifiableNeighbor(v, what, violation.evidence(), violation.evidence_is_induced_path());
    }
    cls.kind[static_cast<std::size_t>(v)] = kind;
    cls.anchor[static_cast<std::size_t>(v)] = anchor;
    (kind == NeighborKind::dtype ? cls.d : cls.t)[static_cast<std::size_t>(anchor)].push_back(v);
  }

  // N(v) within C + T + D_{i+-1} + D_{i+-3} for every D_i vertex.
  for (int i = 0; i < len; ++i)
    for (Vertex v : cls.d[static_cast<std::size_t>(i)])
      for (Vertex w : g.neighbors(v)) {
        const auto kw = cls.kind[static_cast<std::size_t>(w)];
        if (kw == NeighborKind::cycle) continue;
        // Around a C_{k-2}, single vertices of G - S may hang off D.
        if (kw == NeighborKind::outside && which == CycleCase::ck2) continue;
        if (kw == NeighborKind::ttype) {
          cls.d_t_edges.emplace_back(v, w);
          continue;
        }
        if (kw == NeighborKind::dtype) {
          const int diff = fwd(i, cls.anchor[static_cast<std::size_t>(w)]);
          if (diff == 3) cls.d_plus3_edges.emplace_back(v, w);
          if (diff == 1 || diff == len - 1 || diff == 3 || diff == len - 3) continue;
        }
        VertexSubset ev = c.vertices;
        ev.push_back(v);
        ev.push_back(w);
        throw detail::structural_violation(
            g, "D vertex " + std::to_string(v) + " has a neighbour " + std::to_string(w) + " outside C + T + D_{i+-1} + D_{i+-3}",
            ev, k);
      }
  std::sort(cls.d_plus3_edges.begin(), cls.d_plus3_edges.end());
  return cls;
}

}  // namespace cyclecert
