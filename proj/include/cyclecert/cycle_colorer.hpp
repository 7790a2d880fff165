#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cyclecert/graph.hpp"
#include "cyclecert/hom.hpp"

namespace cyclecert {

// A homomorphism G -> C_{k-2}, residues in [0, k-2).
struct CycleColoring {
  int k = 0;
  std::vector<int> residues;
};

enum class WitnessReason {
  OddCycleTooShort,
  EvenKOddCycle,
  H0Exhausted,
  FixedColoringConflict,
  ComponentConflict,
  PropagationConflict,
  FallbackExtracted,
};

std::string_view reason_name(WitnessReason r);
std::optional<WitnessReason> parse_reason(std::string_view name);

// Non-colorability certificate: an induced vertex subset of the input graph.
struct Witness {
  VertexSubset vertices;  // sorted, host ids
  WitnessReason reason = WitnessReason::FallbackExtracted;
  std::optional<int> size_bound;  // claimed bound; none for extracted witnesses
  SearchTranscript transcript;    // exhaustive search proving no hom into C_{k-2}
  bool oracle_verified = false;
};

inline int global_witness_bound(int k) { return 3 * k + 28; }
// Bound attached to each reason; none for FallbackExtracted.
std::optional<int> reason_bound(WitnessReason r, int k);

// Input violates a structural consequence of P_k-freeness. `evidence` is an
// induced P_k when one could be located, otherwise the offending vertices.
class NotPkFree : public std::runtime_error {
public:
  NotPkFree(const std::string& what, VertexSubset evidence, bool is_induced_path)
      : std::runtime_error(what), evidence_(std::move(evidence)), induced_path_(is_induced_path) {}
  const VertexSubset& evidence() const { return evidence_; }
  bool evidence_is_induced_path() const { return induced_path_; }

private:
  VertexSubset evidence_;
  bool induced_path_;
};

class FallbackBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class CycleCase { ck, ck2 };
enum class NeighborKind { cycle, dtype, ttype, outside };

// Attachment of every vertex relative to a fixed induced cycle C.
// Anchors are 0-based positions on C, arithmetic modulo |C|.
struct NeighborClassification {
  CycleCase cycle_case = CycleCase::ck;
  CycleHandle cycle;
  std::vector<NeighborKind> kind;  // per vertex
  std::vector<int> anchor;         // anchor for D/T, position for cycle vertices, -1 otherwise
  std::vector<VertexSubset> d, t;  // per anchor, ascending ids
  VertexSubset outside;            // vertices of G - S
  std::vector<Edge> d_plus3_edges;  // (u, w) with u in D_i, w in D_{i+3}
  std::vector<Edge> d_t_edges;      // (d, t) adjacencies

  int cycle_length() const { return cycle.length(); }
  bool in_s(Vertex v) const { return kind[static_cast<std::size_t>(v)] != NeighborKind::outside; }
};

class UnclassifiableNeighbor : public NotPkFree {
public:
  UnclassifiableNeighbor(Vertex v, const std::string& what, VertexSubset evidence, bool is_path)
      : NotPkFree(what, std::move(evidence), is_path), vertex_(v) {}
  Vertex vertex() const { return vertex_; }

private:
  Vertex vertex_;
};

// Classifies N(C). Throws UnclassifiableNeighbor for an attachment the
// structure lemmas exclude, NotPkFree when a D vertex violates the
// neighbourhood law N(v) in C + T + D_{i+-1} + D_{i+-3} (plus G - S around a
// C_{k-2}).
NeighborClassification classify_neighbors(const Graph& g, const CycleHandle& c, CycleCase which);

// C_k case with T empty and no D_i-D_{i+3} edge: colour C arbitrarily and give
// D_i the colour of v_{i+1}.
std::optional<CycleColoring> try_trivial_coloring(const Graph& g, int k, const NeighborClassification& cls);

struct SurvivingColorings {
  VertexSubset extras;                  // the <= 2 vertices added to C
  std::vector<std::vector<int>> bases;  // colourings of C, one per class up to Aut(C_{k-2})
  int classes_total = 0;                // number of classes before filtering
};

// Keeps the colourings of C (up to automorphisms of C_{k-2}) that extend to
// C plus one T vertex, or C plus the ends of one D_i-D_{i+3} edge.
SurvivingColorings surviving_colorings(const Graph& g, int k, const NeighborClassification& cls);

// Extends a colouring of C to G, or returns the vertices beyond C of a graph
// that, together with C, forbids this base colouring.
std::variant<CycleColoring, VertexSubset> extend_fixed_coloring_ck(const Graph& g, int k,
                                                                   const NeighborClassification& cls,
                                                                   const std::vector<int>& base);

struct CaseResult {
  std::variant<CycleColoring, Witness> result;
  std::optional<int> h0_survivors;  // set when the H0 stage ran
  std::vector<std::string> flags;
};

CaseResult solve_ck_case(const Graph& g, int k, const NeighborClassification& cls);
CaseResult solve_ck_free_case(const Graph& g, int k, const NeighborClassification& cls);

// Exact decision followed by minimal obstruction extraction.
std::variant<CycleColoring, Witness> fallback_exact(const Graph& g, int k, std::uint64_t budget = 0);

struct MinimizeResult {
  Witness witness;
  bool budget_exhausted = false;
};

// Greedy single-vertex deletion in ascending id order while the oracle still
// reports non-colourability.
MinimizeResult minimize_witness(const Graph& g, int k, const Witness& w, std::uint64_t budget = 0);

// Checks a witness: ids valid and distinct, induced subgraph has no hom into
// C_{k-2}. Fills in the transcript.
bool oracle_confirms_witness(const Graph& g, int k, Witness& w);

struct ColorOptions {
  bool verify_input = false;
  int verify_input_max_order = 64;
  bool strict = false;
  bool minimize_witness = false;
  std::uint64_t fallback_budget = 50'000'000;
};

struct SolveStats {
  std::vector<int> h0_survivors;  // one entry per component reaching the H0 stage
  int ck_components = 0;
  int ck_free_components = 0;
  int fallbacks = 0;
};

struct ColorOutcome {
  std::variant<CycleColoring, Witness> result;
  std::vector<std::string> flags;
  SolveStats stats;

  bool colored() const { return std::holds_alternative<CycleColoring>(result); }
  const CycleColoring& coloring() const { return std::get<CycleColoring>(result); }
  const Witness& witness() const { return std::get<Witness>(result); }
};

// Certifying C_{k-2}-colouring for P_k-free graphs, k > 4.
ColorOutcome color_or_witness(const Graph& g, int k, const ColorOptions& opts = {});

bool verify_cycle_coloring(const Graph& g, const CycleColoring& c);

}  // namespace cyclecert
