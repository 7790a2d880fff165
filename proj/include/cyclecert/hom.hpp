#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclecert/graph.hpp"

namespace cyclecert {

// Subset of target vertices; targets are limited to 64 vertices.
using ColorSet = std::uint64_t;
inline constexpr int kMaxTargetOrder = 64;

inline ColorSet color_bit(int c) { return ColorSet{1} << c; }
inline int color_count(ColorSet s) { return std::popcount(s); }
inline int lowest_color(ColorSet s) { return std::countr_zero(s); }

// The graph H an input is mapped into. A cycle target remembers its length.
class TargetGraph {
public:
  explicit TargetGraph(Graph h);
  static TargetGraph cycle(int h);

  const Graph& graph() const { return graph_; }
  int order() const { return graph_.order(); }
  std::optional<int> cycle_length() const { return cycle_length_; }
  ColorSet neighbors(int c) const { return adjacency_[static_cast<std::size_t>(c)]; }
  bool adjacent(int a, int b) const { return (neighbors(a) >> b) & 1u; }
  ColorSet all_colors() const;

private:
  Graph graph_;
  std::optional<int> cycle_length_;
  std::vector<ColorSet> adjacency_;
};

// Admissible colors per input vertex. An empty list makes the instance infeasible.
struct ListAssignment {
  std::vector<ColorSet> lists;

  static ListAssignment full(int n, const TargetGraph& h);
  ColorSet of(Vertex v) const { return lists[static_cast<std::size_t>(v)]; }
  ListAssignment restricted_to(std::span<const Vertex> vertices) const;
};

// "v: c1 c2 ..." per line, 0-based; vertices not mentioned keep the full list.
ListAssignment parse_lists(std::string_view text, int n, const TargetGraph& h);
std::string serialize_lists(const ListAssignment& lists);

using HomMapping = std::vector<int>;

struct HomSearchOptions {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
};

enum class HomStatus { found, infeasible, budget_exceeded };

// Summary of an exhaustive search run: the number of branching nodes and a
// hash of the (vertex, color) decisions in visiting order.
struct SearchTranscript {
  std::uint64_t nodes = 0;
  std::uint64_t trace_hash = 0;
};

struct HomSearchResult {
  HomStatus status = HomStatus::infeasible;
  HomMapping mapping;  // valid when status == found
  SearchTranscript transcript;
};

// Complete backtracking with arc consistency maintained on the lists. Variable
// order is smallest domain, then larger degree, then smaller id; values are
// tried in increasing target id.
HomSearchResult search_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists = std::nullopt,
                           const HomSearchOptions& opts = {});

std::optional<HomMapping> find_hom(const Graph& g, const TargetGraph& h,
                                   const std::optional<ListAssignment>& lists = std::nullopt);

bool verify_hom(const Graph& g, const TargetGraph& h, const HomMapping& m,
                const std::optional<ListAssignment>& lists = std::nullopt);

// All homomorphisms of the cycle v_0..v_{m-1} into C_h, as residue sequences.
std::vector<std::vector<int>> enumerate_cycle_colorings(int m, int h);

}  // namespace cyclecert
