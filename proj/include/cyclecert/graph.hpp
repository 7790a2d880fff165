#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclecert {

using Vertex = int;
using VertexSubset = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1. Adjacency lists are kept sorted
// and free of duplicates and loops.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(adj_.size()); }
  std::size_t size() const { return edge_count_; }

  // Returns false when the edge was already present. Loops are rejected.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[check(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
  std::size_t check(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

// Subgraph induced on `vertices`; vertex i of the result is vertices[i].
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

Graph disjoint_union(const Graph& a, const Graph& b);

// Connected components, each sorted ascending, ordered by smallest vertex.
std::vector<VertexSubset> connected_components(const Graph& g);

// A cyclic sequence of distinct vertices with consecutive vertices adjacent.
struct CycleHandle {
  VertexSubset vertices;
  int length() const { return static_cast<int>(vertices.size()); }
  Vertex at(int i) const;  // index taken modulo length
};

bool is_cycle_in(const Graph& g, const CycleHandle& c);
bool is_induced_cycle_in(const Graph& g, const CycleHandle& c);
bool is_induced_path_in(const Graph& g, std::span<const Vertex> path);

// Handy constructors for the named graphs used throughout tests and tools.
namespace named {
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph petersen();
Graph wheel(int rim);
}  // namespace named

}  // namespace cyclecert
