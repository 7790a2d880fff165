#include "cyclecert/graph.hpp"

#include <algorithm>
#include <numeric>

namespace cyclecert {

Graph::Graph(int n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adj_.resize(static_cast<std::size_t>(n));
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

std::size_t Graph::check(Vertex v) const {
  if (v < 0 || v >= order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

bool Graph::add_edge(Vertex u, Vertex v) {
  auto& nu = adj_[check(u)];
  auto& nv = adj_[check(v)];
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  auto& nu = adj_[check(u)];
  auto& nv = adj_[check(v)];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --edge_count_;
  return true;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& nu = adj_[check(u)];
  check(v);
  // Search the shorter list.
  if (nu.size() > adj_[static_cast<std::size_t>(v)].size()) std::swap(u, v);
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v : adj_[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<int> index(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vertex v = vertices[i];
    if (v < 0 || v >= g.order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    if (index[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("duplicate vertex " + std::to_string(v));
    index[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i])) {
      int j = index[static_cast<std::size_t>(w)];
      if (j > static_cast<int>(i)) h.add_edge(static_cast<int>(i), j);
    }
  return h;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(u + a.order(), v + a.order());
  return g;
}

std::vector<VertexSubset> connected_components(const Graph& g) {
  std::vector<VertexSubset> comps;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    VertexSubset comp;
    stack.push_back(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Vertex CycleHandle::at(int i) const {
  const int m = length();
  return vertices[static_cast<std::size_t>(((i % m) + m) % m)];
}

bool is_cycle_in(const Graph& g, const CycleHandle& c) {
  const int m = c.length();
  if (m < 3) return false;
  VertexSubset sorted = c.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.front() < 0 || sorted.back() >= g.order()) return false;
  for (int i = 0; i < m; ++i)
    if (!g.has_edge(c.at(i), c.at(i + 1))) return false;
  return true;
}

bool is_induced_cycle_in(const Graph& g, const CycleHandle& c) {
  if (!is_cycle_in(g, c)) return false;
  const int m = c.length();
  for (int i = 0; i < m; ++i)
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      if (g.has_edge(c.at(i), c.at(j))) return false;
    }
  return true;
}

bool is_induced_path_in(const Graph& g, std::span<const Vertex> path) {
  const auto m = path.size();
  VertexSubset sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= g.order())) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (g.has_edge(path[i], path[j]) != (j == i + 1)) return false;
  return true;
}

namespace named {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph wheel(int rim) {
  Graph g(rim + 1);
  for (int i = 0; i < rim; ++i) {
    g.add_edge(i, (i + 1) % rim);
    g.add_edge(i, rim);
  }
  return g;
}

}  // namespace named
}  // namespace cyclecert
