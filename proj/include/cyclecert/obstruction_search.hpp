#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclecert/graph.hpp"
#include "cyclecert/hom.hpp"

namespace cyclecert {

// Relabelling minimising the column-wise upper-triangle adjacency string (the
// graph6 bit order) over all orderings compatible with the equitable
// degree partition. Optional vertex labels take part in the partition and are
// reported in canonical order.
struct CanonicalForm {
  Graph graph{0};
  std::vector<int> labels;       // empty for unlabelled input
  std::vector<Vertex> position;  // position[v] = new index of v
  std::string key;               // graph6, then labels when present
};

CanonicalForm canonical_form(const Graph& g, const std::vector<int>* labels = nullptr);
inline std::string canonical_key(const Graph& g) { return canonical_form(g).key; }

class CapacityExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Largest order the enumeration accepts: 8, or CYCLECERT_MAX_N when set.
int enumeration_cap();

// Every graph on 1..n_max vertices up to isomorphism, in canonical form,
// ordered by (order, key).
void enumerate_small_graphs(int n_max, const std::function<void(const Graph&)>& visit);
std::vector<Graph> enumerate_small_graphs(int n_max);

enum class MinimalityMode { induced, subgraph };

struct ClassSpec {
  int k = 2;                // induced P_k forbidden
  std::optional<int> t;     // induced K_{t,t} forbidden
  TargetGraph target{Graph(1)};
  MinimalityMode mode = MinimalityMode::induced;
};

// c-critical graphs: K_{c-1} target, subgraph minimality, P_k-free.
ClassSpec critical_spec(int k, int c);

bool filter_class(const Graph& g, const ClassSpec& spec);

// No list homomorphism into H, and every one-vertex deletion has one. In
// subgraph mode every one-edge deletion has one too; with lists, so does every
// enlargement of one list by one colour.
bool is_minimal_obstruction(const Graph& g, const TargetGraph& h, MinimalityMode mode,
                            const std::optional<ListAssignment>& lists = std::nullopt);

struct CatalogEntry {
  Graph graph{0};
  std::string key;
  std::optional<ListAssignment> lists;
  bool verified_minimal = false;
  bool pk_free = false;
  std::optional<bool> biclique_free;

  int order() const { return graph.order(); }
};

struct ObstructionCatalog {
  ClassSpec spec;
  int n_max = 0;
  std::vector<CatalogEntry> entries;  // ordered by (order, key)
};

ObstructionCatalog find_minimal_obstructions(const ClassSpec& spec, int n_max);

struct ListSampling {
  int samples_per_graph = 8;
  std::uint64_t seed = 1;
};

// Same search with random list assignments standing in for all labellings.
ObstructionCatalog find_minimal_list_obstructions(const ClassSpec& spec, int n_max, const ListSampling& sampling);

// Re-runs the oracle on every entry: non-colourable, minimal, in the class,
// pairwise non-isomorphic.
bool recheck_catalog(const ObstructionCatalog& catalog);

std::string catalog_graph6(const ObstructionCatalog& catalog);
std::string catalog_json(const ObstructionCatalog& catalog);

}  // namespace cyclecert
