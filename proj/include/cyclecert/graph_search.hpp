#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "cyclecert/graph.hpp"

namespace cyclecert {

// Budget for the exponential searches below. Zero means unlimited.
struct SearchBudget {
  std::uint64_t max_nodes = 0;
  // Refuse to run on graphs with more vertices than this (0 = no guard).
  int max_order = 0;
};

class SearchBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Bipartition {
  std::vector<int> side;  // 0 or 1 per vertex
};

// Two-sided partition, or a shortest (hence chordless) odd cycle.
std::variant<Bipartition, CycleHandle> is_bipartite_certified(const Graph& g);

// Minimum-length odd cycle via a BFS from every vertex; O(n*m).
std::optional<CycleHandle> shortest_odd_cycle(const Graph& g);

// Induced cycle on exactly m vertices. Deterministic: the cycle whose smallest
// vertex is least is reported first, traversed from that vertex.
std::optional<CycleHandle> find_induced_cycle(const Graph& g, int m, const SearchBudget& budget = {});

// Induced path on k vertices.
std::optional<VertexSubset> find_induced_path(const Graph& g, int k, const SearchBudget& budget = {});

// Induced path on k vertices that passes through v.
std::optional<VertexSubset> find_induced_path_through(const Graph& g, int k, Vertex v);

struct CliqueFound {
  VertexSubset clique;
};
struct BoundHolds {};

// Either a clique on bound+1 vertices or the guarantee omega(G) <= bound.
std::variant<CliqueFound, BoundHolds> max_clique_leq(const Graph& g, int bound);

int clique_number(const Graph& g);

// Induced K_{t,t}: two independent t-sets, completely joined.
std::optional<std::pair<VertexSubset, VertexSubset>> find_induced_biclique(const Graph& g, int t);

// A (not necessarily induced) path subgraph on l vertices.
std::optional<VertexSubset> find_path_subgraph(const Graph& g, int l);

}  // namespace cyclecert
