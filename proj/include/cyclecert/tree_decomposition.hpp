#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclecert/graph.hpp"
#include "cyclecert/hom.hpp"

namespace cyclecert {

struct TreeDecomposition {
  std::vector<VertexSubset> bags;
  std::vector<std::pair<int, int>> tree;  // edges between bag indices

  int width() const;
};

// One bag per vertex holding its DFS root-to-vertex path; tree edges follow the
// DFS tree. Several components hang off an empty root bag.
TreeDecomposition dfs_decomposition(const Graph& g);

bool validate_decomposition(const Graph& g, const TreeDecomposition& td);

// "b<i>: v v v" per bag, then "t: i j" per tree edge.
std::string dump_decomposition(const TreeDecomposition& td);

class WidthCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DpOptions {
  int width_cap = 12;
};

// Bag-table dynamic programming for list homomorphisms G -> H. td must be a
// valid decomposition of g.
std::optional<HomMapping> dp_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists,
                                 const TreeDecomposition& td, const DpOptions& opts = {});

// Inclusion-minimal vertex set whose induced subgraph, with inherited lists,
// has no list homomorphism into h. Vertices are dropped in ascending id order.
VertexSubset minimal_obstruction_extract(const Graph& g, const TargetGraph& h,
                                         const std::optional<ListAssignment>& lists = std::nullopt);

// A clique on omega(H)+1 vertices of g, if there is one.
std::optional<VertexSubset> clique_precheck(const Graph& g, const TargetGraph& h);

}  // namespace cyclecert
