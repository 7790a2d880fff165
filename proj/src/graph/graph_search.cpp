#include "cyclecert/graph_search.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace cyclecert {

namespace {

constexpr int kUnseen = -1;

class NodeCounter {
public:
  explicit NodeCounter(const SearchBudget& b) : limit_(b.max_nodes) {}
  void tick() {
    if (limit_ != 0 && ++count_ > limit_) throw SearchBudgetExceeded("search node budget exhausted");
  }

private:
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
};

void check_order(const Graph& g, const SearchBudget& b, const char* what) {
  if (b.max_order > 0 && g.order() > b.max_order)
    throw SearchBudgetExceeded(std::string(what) + ": graph has " + std::to_string(g.order()) +
                               " vertices, guard is " + std::to_string(b.max_order));
}

}  // namespace

std::optional<CycleHandle> shortest_odd_cycle(const Graph& g) {
  const int n = g.order();
  int best = std::numeric_limits<int>::max();
  std::optional<CycleHandle> result;
  std::vector<int> dist(static_cast<std::size_t>(n)), parent(static_cast<std::size_t>(n));
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[static_cast<std::size_t>(s)] = 0;
    parent[static_cast<std::size_t>(s)] = s;
    queue.assign(1, s);
    bool done = false;
    while (!queue.empty() && !done) {
      Vertex u = queue.front();
      queue.pop_front();
      const int du = dist[static_cast<std::size_t>(u)];
      if (2 * du + 1 >= best) break;
      for (Vertex w : g.neighbors(u)) {
        int& dw = dist[static_cast<std::size_t>(w)];
        if (dw == kUnseen) {
          dw = du + 1;
          parent[static_cast<std::size_t>(w)] = u;
          queue.push_back(w);
        } else if (dw == du && u < w) {
          // Same-level edge: closed odd walk of length 2*du+1 through s. At the
          // global minimum the two tree paths only meet at s.
          best = 2 * du + 1;
          VertexSubset left, right;
          for (Vertex x = u; x != s; x = parent[static_cast<std::size_t>(x)]) left.push_back(x);
          for (Vertex x = w; x != s; x = parent[static_cast<std::size_t>(x)]) right.push_back(x);
          CycleHandle c;
          c.vertices.push_back(s);
          c.vertices.insert(c.vertices.end(), left.rbegin(), left.rend());
          c.vertices.insert(c.vertices.end(), right.begin(), right.end());
          result = std::move(c);
          done = true;
          break;
        }
      }
    }
  }
  return result;
}

std::variant<Bipartition, CycleHandle> is_bipartite_certified(const Graph& g) {
  Bipartition part;
  part.side.assign(static_cast<std::size_t>(g.order()), kUnseen);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (part.side[static_cast<std::size_t>(s)] != kUnseen) continue;
    part.side[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(u)) {
        int& sw = part.side[static_cast<std::size_t>(w)];
        if (sw == kUnseen) {
          sw = 1 - part.side[static_cast<std::size_t>(u)];
          queue.push_back(w);
        } else if (sw == part.side[static_cast<std::size_t>(u)]) {
          return *shortest_odd_cycle(g);
        }
      }
    }
  }
  return part;
}

namespace {

// Backtracking over induced paths that start at path[0] = smallest cycle vertex.
struct InducedCycleSearch {
  const Graph& g;
  int m;
  NodeCounter counter;
  VertexSubset path;

  bool extend() {
    counter.tick();
    const int j = static_cast<int>(path.size());
    const Vertex first = path.front();
    const Vertex last = path.back();
    for (Vertex x : g.neighbors(last)) {
      if (x <= first) continue;
      if (std::find(path.begin(), path.end(), x) != path.end()) continue;
      // x may touch only `last` among the inner path, and touches `first`
      // exactly when it closes the cycle.
      bool ok = true;
      for (int i = 1; i + 1 < j && ok; ++i)
        if (g.has_edge(x, path[static_cast<std::size_t>(i)])) ok = false;
      if (!ok) continue;
      const bool closes = (j + 1 == m);
      if (j >= 2 && g.has_edge(x, first) != closes) continue;
      if (j < 2 && closes) continue;
      path.push_back(x);
      if (closes || extend()) return true;
      path.pop_back();
    }
    return false;
  }
};

struct InducedPathSearch {
  const Graph& g;
  int k;
  NodeCounter counter;
  VertexSubset path;
  std::vector<int> blocked;  // number of path vertices adjacent to or equal to v

  void push(Vertex v) {
    path.push_back(v);
    ++blocked[static_cast<std::size_t>(v)];
    for (Vertex w : g.neighbors(v)) ++blocked[static_cast<std::size_t>(w)];
  }
  void pop() {
    Vertex v = path.back();
    path.pop_back();
    --blocked[static_cast<std::size_t>(v)];
    for (Vertex w : g.neighbors(v)) --blocked[static_cast<std::size_t>(w)];
  }

  bool extend() {
    counter.tick();
    if (static_cast<int>(path.size()) == k) return true;
    const Vertex last = path.back();
    for (Vertex x : g.neighbors(last)) {
      // x is adjacent to `last` only: its block count is exactly 1.
      if (blocked[static_cast<std::size_t>(x)] != 1) continue;
      push(x);
      if (extend()) return true;
      pop();
    }
    return false;
  }
};

}  // namespace

std::optional<CycleHandle> find_induced_cycle(const Graph& g, int m, const SearchBudget& budget) {
  if (m < 3) throw std::invalid_argument("induced cycle length must be at least 3");
  check_order(g, budget, "find_induced_cycle");
  InducedCycleSearch search{g, m, NodeCounter(budget), {}};
  for (Vertex s = 0; s < g.order(); ++s) {
    search.path.assign(1, s);
    if (search.extend()) return CycleHandle{search.path};
  }
  return std::nullopt;
}

std::optional<VertexSubset> find_induced_path(const Graph& g, int k, const SearchBudget& budget) {
  if (k < 1) throw std::invalid_argument("induced path order must be at least 1");
  check_order(g, budget, "find_induced_path");
  InducedPathSearch search{g, k, NodeCounter(budget), {}, std::vector<int>(static_cast<std::size_t>(g.order()), 0)};
  for (Vertex s = 0; s < g.order(); ++s) {
    search.push(s);
    if (search.extend()) return search.path;
    search.pop();
  }
  return std::nullopt;
}

std::optional<VertexSubset> find_induced_path_through(const Graph& g, int k, Vertex v) {
  if (k < 1) throw std::invalid_argument("induced path order must be at least 1");
  // Grow a path to the right of v, then for every prefix length try to grow the
  // left part so that the two halves see no edges between them.
  const int n = g.order();
  std::vector<int> blocked(static_cast<std::size_t>(n), 0);
  VertexSubset right{v}, left;
  auto block = [&](Vertex x, int delta) {
    blocked[static_cast<std::size_t>(x)] += delta;
    for (Vertex w : g.neighbors(x)) blocked[static_cast<std::size_t>(w)] += delta;
  };
  // Left growth from v: the first left vertex is adjacent to v only.
  auto grow_left = [&](auto&& self, Vertex tail) -> bool {
    if (static_cast<int>(left.size() + right.size()) == k) return true;
    for (Vertex x : g.neighbors(tail)) {
      if (blocked[static_cast<std::size_t>(x)] != 1) continue;
      left.push_back(x);
      block(x, +1);
      if (self(self, x)) return true;
      block(x, -1);
      left.pop_back();
    }
    return false;
  };
  auto grow_right = [&](auto&& self) -> bool {
    if (static_cast<int>(right.size()) == k) return true;
    if (grow_left(grow_left, v)) return true;
    for (Vertex x : g.neighbors(right.back())) {
      if (blocked[static_cast<std::size_t>(x)] != 1) continue;
      right.push_back(x);
      block(x, +1);
      if (self(self)) return true;
      block(x, -1);
      right.pop_back();
    }
    return false;
  };
  block(v, +1);
  if (grow_right(grow_right)) {
    VertexSubset path(left.rbegin(), left.rend());
    path.insert(path.end(), right.begin(), right.end());
    return path;
  }
  return std::nullopt;
}

namespace {

struct CliqueSearch {
  const Graph& g;
  int target;
  VertexSubset current;

  // Greedy colouring bound on the candidate set.
  int colour_bound(const VertexSubset& cand) const {
    std::vector<VertexSubset> classes;
    for (Vertex v : cand) {
      bool placed = false;
      for (auto& cls : classes) {
        bool independent = std::none_of(cls.begin(), cls.end(), [&](Vertex u) { return g.has_edge(u, v); });
        if (independent) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    return static_cast<int>(classes.size());
  }

  bool expand(VertexSubset cand) {
    if (static_cast<int>(current.size()) >= target) return true;
    if (static_cast<int>(current.size() + cand.size()) < target) return false;
    if (static_cast<int>(current.size()) + colour_bound(cand) < target) return false;
    while (!cand.empty()) {
      if (static_cast<int>(current.size() + cand.size()) < target) return false;
      Vertex v = cand.front();
      cand.erase(cand.begin());
      VertexSubset next;
      for (Vertex u : cand)
        if (g.has_edge(u, v)) next.push_back(u);
      current.push_back(v);
      if (expand(std::move(next))) return true;
      current.pop_back();
    }
    return false;
  }
};

}  // namespace

std::variant<CliqueFound, BoundHolds> max_clique_leq(const Graph& g, int bound) {
  if (bound < 1) throw std::invalid_argument("clique bound must be at least 1");
  CliqueSearch search{g, bound + 1, {}};
  VertexSubset all(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) all[static_cast<std::size_t>(v)] = v;
  // High-degree vertices first tends to find large cliques early.
  std::stable_sort(all.begin(), all.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  if (search.expand(all)) {
    VertexSubset clique = search.current;
    std::sort(clique.begin(), clique.end());
    return CliqueFound{clique};
  }
  return BoundHolds{};
}

int clique_number(const Graph& g) {
  if (g.order() == 0) return 0;
  int omega = 1;
  while (std::holds_alternative<CliqueFound>(max_clique_leq(g, omega))) ++omega;
  return omega;
}

std::optional<std::pair<VertexSubset, VertexSubset>> find_induced_biclique(const Graph& g, int t) {
  if (t < 1) throw std::invalid_argument("biclique side must be at least 1");
  const int n = g.order();
  VertexSubset a, b;
  // Independent t-subset of `pool` in ascending order, starting after index `from`.
  auto independent_subset = [&](auto&& self, const VertexSubset& pool, std::size_t from, VertexSubset& out,
                                auto&& on_complete) -> bool {
    if (static_cast<int>(out.size()) == t) return on_complete();
    for (std::size_t i = from; i < pool.size(); ++i) {
      Vertex v = pool[i];
      if (std::any_of(out.begin(), out.end(), [&](Vertex u) { return g.has_edge(u, v); })) continue;
      out.push_back(v);
      if (self(self, pool, i + 1, out, on_complete)) return true;
      out.pop_back();
    }
    return false;
  };
  VertexSubset all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  auto on_a = [&]() -> bool {
    VertexSubset common;
    for (Vertex v : g.neighbors(a.front()))
      if (v > a.front() &&
          std::all_of(a.begin(), a.end(), [&](Vertex u) { return g.has_edge(u, v); }))
        common.push_back(v);
    auto on_b = [] { return true; };
    return independent_subset(independent_subset, common, 0, b, on_b);
  };
  if (independent_subset(independent_subset, all, 0, a, on_a)) return std::make_pair(a, b);
  return std::nullopt;
}

std::optional<VertexSubset> find_path_subgraph(const Graph& g, int l) {
  if (l < 1) throw std::invalid_argument("path order must be at least 1");
  const int n = g.order();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  VertexSubset path;
  auto dfs = [&](auto&& self, Vertex v) -> bool {
    path.push_back(v);
    used[static_cast<std::size_t>(v)] = 1;
    if (static_cast<int>(path.size()) == l) return true;
    for (Vertex w : g.neighbors(v))
      if (!used[static_cast<std::size_t>(w)] && self(self, w)) return true;
    used[static_cast<std::size_t>(v)] = 0;
    path.pop_back();
    return false;
  };
  for (Vertex s = 0; s < n; ++s)
    if (dfs(dfs, s)) return path;
  return std::nullopt;
}

}  // namespace cyclecert
