// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclecert/cli.hpp"
#include "cyclecert/cycle_colorer.hpp"
#include "cyclecert/graph_search.hpp"
#include "cyclecert/obstruction_search.hpp"
#include "cyclecert/tree_decomposition.hpp"
#include "support/brute.hpp"
#include "support/random_graphs.hpp"

using namespace cyclecert;
using nlohmann::json;

namespace {

// Pinned tolerances and sample sizes.
constexpr double kRequiredAgreement = 1.0;  // fraction of instances agreeing with the oracle
constexpr int kMaxViolations = 0;
constexpr int kMaxSurvivors = 5;
constexpr int kExhaustiveOrder = 8;
constexpr int kRandomInstances = 10000;
constexpr int kRandomMaxOrder = 60;
constexpr int kEvenKGraphs = 1000;
constexpr int kDpInstances = 2000;
constexpr int kDpMaxOrder = 10;
constexpr int kMaxPathSubgraph = 8;
constexpr int kCatalogOrder = 6;
constexpr int kMinTamperTrials = 1000;

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

struct Instance {
  Graph g;
  int k;
  ColorOutcome outcome;
};

// Bounds as stated for each kind of witness.
int bound_for(WitnessReason r, int k) {
  switch (r) {
    case WitnessReason::OddCycleTooShort: return k - 4;
    case WitnessReason::EvenKOddCycle: return k - 1;
    case WitnessReason::H0Exhausted: return k + 42;
    case WitnessReason::FixedColoringConflict:
    case WitnessReason::ComponentConflict:
    case WitnessReason::PropagationConflict: return 3 * k + 2;
    case WitnessReason::FallbackExtracted: return -1;
  }
  return -1;
}

struct WitnessAudit {
  int witnesses = 0, colorings = 0;
  int bound_violations = 0, oracle_violations = 0, coloring_violations = 0;
  int h0_instances = 0, h0_max = 0, survivor_violations = 0, flagged = 0;
  std::map<std::string, int> by_reason;

  void add(const Instance& in) {
    const Graph& g = in.g;
    const int k = in.k;
    const auto& o = in.outcome;
    for (int s : o.stats.h0_survivors) {
      ++h0_instances;
      h0_max = std::max(h0_max, s);
      if (s > kMaxSurvivors) ++survivor_violations;
    }
    if (!o.flags.empty()) ++flagged;
    if (o.colored()) {
      ++colorings;
      const auto& c = o.coloring();
      if (c.k != k || !verify_hom(g, TargetGraph::cycle(k - 2), c.residues)) ++coloring_violations;
      return;
    }
    ++witnesses;
    const auto& w = o.witness();
    ++by_reason[std::string(reason_name(w.reason))];
    const int size = static_cast<int>(w.vertices.size());
    if (size > 3 * k + 28) ++bound_violations;
    const int b = bound_for(w.reason, k);
    if (b >= 0 && size > b) ++bound_violations;
    if (w.reason == WitnessReason::FallbackExtracted) ++flagged;
    std::set<Vertex> distinct(w.vertices.begin(), w.vertices.end());
    bool ok = !w.vertices.empty() && distinct.size() == w.vertices.size() && *distinct.rbegin() < g.order() &&
              *distinct.begin() >= 0;
    if (ok) ok = !find_hom(induced_subgraph(g, w.vertices), TargetGraph::cycle(k - 2)).has_value();
    if (!ok) ++oracle_violations;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool bipartite(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  for (int s = 0; s < g.order(); ++s) {
    if (side[static_cast<std::size_t>(s)] >= 0) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::vector<int> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int u = queue[i];
      for (int w : g.neighbors(u)) {
        auto& sw = side[static_cast<std::size_t>(w)];
        if (sw < 0) {
          sw = 1 - side[static_cast<std::size_t>(u)];
          queue.push_back(w);
        } else if (sw == side[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool minimal_per_mode(const Graph& g, const TargetGraph& h, MinimalityMode mode,
                      const std::optional<ListAssignment>& lists) {
  auto sub = [&](const VertexSubset& s) -> std::optional<ListAssignment> {
    if (!lists) return std::nullopt;
    return lists->restricted_to(s);
  };
  VertexSubset all;
  for (int v = 0; v < g.order(); ++v) all.push_back(v);
  if (find_hom(g, h, sub(all))) return false;
  for (int v = 0; v < g.order(); ++v) {
    VertexSubset rest;
    for (int w = 0; w < g.order(); ++w)
      if (w != v) rest.push_back(w);
    if (!find_hom(induced_subgraph(g, rest), h, sub(rest))) return false;
  }
  if (mode == MinimalityMode::subgraph)
    for (auto [u, v] : g.edges()) {
      Graph e = g;
      e.remove_edge(u, v);
      if (!find_hom(e, h, lists)) return false;
    }
  return true;
}

// Labelled brute force: every P_k-free graph on <= n_max vertices that is not
// H-colourable while every vertex or edge deletion is, as isomorphism classes.
std::set<std::uint64_t> brute_subgraph_minimal(int n_max, int k, const Graph& h) {
  std::set<std::uint64_t> out;
  for (int n = 1; n <= n_max; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const Graph g = brute::from_mask(n, mask);
      if (brute::hom_exists(g, h)) continue;
      bool minimal = true;
      for (auto [u, v] : g.edges()) {
        Graph e = g;
        e.remove_edge(u, v);
        if (!brute::hom_exists(e, h)) {
          minimal = false;
          break;
        }
      }
      for (int v = 0; v < n && minimal; ++v) {
        VertexSubset rest;
        for (int w = 0; w < n; ++w)
          if (w != v) rest.push_back(w);
        if (!brute::hom_exists(induced_subgraph(g, rest), h)) minimal = false;
      }
      if (!minimal || brute::has_induced_path(g, k)) continue;
      out.insert(brute::min_relabel_mask(g) | (std::uint64_t{static_cast<unsigned>(n)} << 56));
    }
  }
  return out;
}

std::uint64_t class_id(const Graph& g) {
  return brute::min_relabel_mask(g) | (std::uint64_t{static_cast<unsigned>(g.order())} << 56);
}

}  // namespace

int main() {
  Report report;
  std::mt19937_64 rng(20240601);
  std::vector<Instance> exhaustive, randomized, even;
  const auto small = enumerate_small_graphs(kExhaustiveOrder);

  // 1. Exhaustive oracle equivalence.
  {
    const auto t0 = std::chrono::steady_clock::now();
    long tested = 0, agree = 0;
    for (int k : {6, 7}) {
      for (const Graph& g : small) {
        if (find_induced_path(g, k)) continue;
        ++tested;
        auto o = color_or_witness(g, k);
        if (o.colored() == find_hom(g, TargetGraph::cycle(k - 2)).has_value()) ++agree;
        exhaustive.push_back({g, k, std::move(o)});
      }
    }
    const double frac = tested ? static_cast<double>(agree) / static_cast<double>(tested) : 0.0;
    report.line(1, tested > 0 && frac >= kRequiredAgreement, "exhaustive oracle equivalence, k in {6,7}, n <= 8",
                fmt("%ld/%ld P_k-free graphs agree, %.1fs", agree, tested, seconds_since(t0)));
  }

  // 2. Witness bounds on the exhaustive suite plus random P_k-free instances.
  WitnessAudit audit2;
  {
    const auto t0 = std::chrono::steady_clock::now();
    const int ks[] = {6, 7, 8, 9, 11};
    long disagree = 0;
    std::uniform_int_distribution<int> order(8, kRandomMaxOrder);
    for (int i = 0; i < kRandomInstances; ++i) {
      const int k = ks[i % 5];
      Graph g = testing::random_pk_free(k, order(rng), rng, i % 4 != 0);
      auto o = color_or_witness(g, k);
      if (o.colored() != find_hom(g, TargetGraph::cycle(k - 2)).has_value()) ++disagree;
      randomized.push_back({std::move(g), k, std::move(o)});
    }
    for (const auto& in : exhaustive) audit2.add(in);
    for (const auto& in : randomized) audit2.add(in);
    const bool ok = audit2.bound_violations <= kMaxViolations && audit2.oracle_violations <= kMaxViolations &&
                    disagree <= kMaxViolations && audit2.witnesses > 0;
    std::string reasons;
    for (const auto& [r, n] : audit2.by_reason) reasons += fmt(" %s=%d", r.c_str(), n);
    report.line(2, ok, "witness size bounds and oracle verification",
                fmt("%d witnesses, %d bound violations, %d oracle violations, %ld random decisions off, %.1fs;",
                    audit2.witnesses, audit2.bound_violations, audit2.oracle_violations, disagree, seconds_since(t0)) +
                    reasons);
  }

  // 4 runs before 3 so its colourings join the soundness audit.
  int even_violations = 0;
  {
    for (int i = 0; i < kEvenKGraphs; ++i) {
      const int k = i % 2 ? 8 : 6;
      Graph g;
      if (i % 4 < 2) {
        g = testing::random_pk_free(k, 8 + i % 33, rng, false);
      } else {
        do {
          g = testing::random_graph(4 + i % 9, 0.2 + 0.03 * (i % 10), rng);
        } while (find_induced_path(g, k));
      }
      auto o = color_or_witness(g, k);
      const bool bip = bipartite(g);
      bool ok = o.colored() == bip;
      if (ok && o.colored()) {
        std::set<int> used(o.coloring().residues.begin(), o.coloring().residues.end());
        ok = used.size() <= 2;
        if (ok && used.size() == 2) ok = TargetGraph::cycle(k - 2).adjacent(*used.begin(), *used.rbegin());
        ok = ok && verify_hom(g, TargetGraph::cycle(k - 2), o.coloring().residues);
      } else if (ok) {
        const auto& w = o.witness().vertices;
        const Graph sub = induced_subgraph(g, w);
        ok = brute::is_cycle_graph(sub) && sub.order() % 2 == 1 && sub.order() <= k - 1;
      }
      if (!ok) ++even_violations;
      even.push_back({std::move(g), k, std::move(o)});
    }
  }

  // 3. Colouring soundness over all suites.
  {
    WitnessAudit all = audit2;
    for (const auto& in : even) all.add(in);
    report.line(3, all.coloring_violations <= kMaxViolations && all.colorings > 0, "colouring soundness",
                fmt("%d colourings checked, %d violations", all.colorings, all.coloring_violations));
  }

  report.line(4, even_violations <= kMaxViolations, "even-k contract, k in {6,8}",
              fmt("%d graphs, %d violations", kEvenKGraphs, even_violations));

  // 5. Surviving colourings.
  {
    WitnessAudit ex;
    for (const auto& in : exhaustive) ex.add(in);
    const bool ok = audit2.survivor_violations <= kMaxViolations && ex.flagged <= kMaxViolations;
    report.line(5, ok, "at most 5 surviving base colourings",
                fmt("%d H0 runs, max %d survivors, %d over, %d flagged on exhaustive suite, %d flagged overall",
                    audit2.h0_instances, audit2.h0_max, audit2.survivor_violations, ex.flagged, audit2.flagged));
  }

  // 6. DP equivalence.
  {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<TargetGraph> targets = {TargetGraph(named::complete(3)), TargetGraph(named::complete(4)),
                                              TargetGraph::cycle(5), TargetGraph::cycle(7)};
    int agree = 0, invalid = 0;
    for (int i = 0; i < kDpInstances; ++i) {
      const auto& h = targets[static_cast<std::size_t>(i) % targets.size()];
      const Graph g = testing::random_graph(1 + i % kDpMaxOrder, 0.15 + 0.05 * (i % 9), rng);
      std::optional<ListAssignment> lists;
      if (i % 3 != 0) lists = testing::random_lists(g.order(), h, rng);
      const auto dp = dp_hom(g, h, lists, dfs_decomposition(g));
      if (dp.has_value() == find_hom(g, h, lists).has_value()) ++agree;
      if (dp && !verify_hom(g, h, *dp, lists)) ++invalid;
    }
    const double frac = static_cast<double>(agree) / kDpInstances;
    report.line(6, frac >= kRequiredAgreement && invalid <= kMaxViolations, "DP agrees with search",
                fmt("%d/%d agree, %d invalid mappings, %.1fs", agree, kDpInstances, invalid, seconds_since(t0)));
  }

  // 7. Decompositions.
  {
    long checked = 0, invalid = 0, depth_checked = 0, depth_violations = 0;
    auto check = [&](const Graph& g) {
      ++checked;
      if (!validate_decomposition(g, dfs_decomposition(g))) ++invalid;
    };
    for (const Graph& g : small) {
      check(g);
      const auto td = dfs_decomposition(g);
      std::size_t bag = 0;
      for (const auto& b : td.bags) bag = std::max(bag, b.size());
      for (int l = 2; l <= kMaxPathSubgraph; ++l) {
        if (find_path_subgraph(g, l)) continue;
        ++depth_checked;
        if (bag > static_cast<std::size_t>(l - 1)) ++depth_violations;
      }
    }
    for (const auto& in : randomized) check(in.g);
    for (const auto& in : even) check(in.g);
    report.line(7, invalid <= kMaxViolations && depth_violations <= kMaxViolations && depth_checked > 0,
                "tree decompositions valid, bags <= l-1 without a P_l subgraph",
                fmt("%ld decompositions, %ld invalid, %ld (graph, l) pairs, %ld bag violations", checked, invalid,
                    depth_checked, depth_violations));
  }

  // 8. Minimal obstructions.
  {
    const auto t0 = std::chrono::steady_clock::now();
    int entries = 0, bad = 0;
    auto audit = [&](const ObstructionCatalog& cat) {
      std::set<std::string> keys;
      for (const auto& e : cat.entries) {
        ++entries;
        if (!minimal_per_mode(e.graph, cat.spec.target, cat.spec.mode, e.lists)) ++bad;
        if (!keys.insert(canonical_key(e.graph)).second) ++bad;
      }
    };
    const auto critical = find_minimal_obstructions(critical_spec(6, 4), kCatalogOrder);
    audit(critical);
    ClassSpec c5;
    c5.k = 7;
    c5.target = TargetGraph::cycle(5);
    audit(find_minimal_obstructions(c5, kCatalogOrder));
    ClassSpec bic;
    bic.k = 6;
    bic.t = 2;
    bic.target = TargetGraph(named::complete(3));
    audit(find_minimal_obstructions(bic, kCatalogOrder));
    ClassSpec lists;
    lists.k = 5;
    lists.target = TargetGraph(named::complete(3));
    audit(find_minimal_list_obstructions(lists, 4, ListSampling{8, 7}));

    int extracted = 0;
    for (int i = 0; i < 300; ++i) {
      const Graph g = testing::random_graph(3 + i % 8, 0.45, rng);
      const TargetGraph h = i % 2 ? TargetGraph::cycle(5) : TargetGraph(named::complete(3));
      if (find_hom(g, h)) continue;
      ++extracted;
      if (!minimal_per_mode(induced_subgraph(g, minimal_obstruction_extract(g, h)), h, MinimalityMode::induced,
                            std::nullopt))
        ++bad;
    }

    std::set<std::uint64_t> got;
    for (const auto& e : critical.entries) got.insert(class_id(e.graph));
    const auto reference = brute_subgraph_minimal(kCatalogOrder, 6, named::complete(3));
    const bool has_k4 = got.count(class_id(named::complete(4))) == 1;
    const bool has_w5 = reference.count(class_id(named::wheel(5))) == 1;
    const bool ok = bad <= kMaxViolations && has_k4 && got == reference;
    report.line(8, ok, "minimal obstructions verified; 4-critical P_6-free catalog matches brute force",
                fmt("%d catalog entries, %d extractions, %d failures, catalog %zu vs brute force %zu classes, K4 %s, "
                    "W5 %s, %.1fs",
                    entries, extracted, bad, got.size(), reference.size(), has_k4 ? "present" : "missing",
                    has_w5 ? "present" : "absent", seconds_since(t0)));
  }

  // 9. Certificate closed loop.
  {
    int accepted = 0, outputs = 0, tampers = 0, tamper_accepted = 0;
    std::uniform_int_distribution<int> coin(0, 3);
    auto tamper_color = [&](const Graph& g, json j) {
      const int kind = coin(rng);
      if (j["status"] == "colored") {
        if (g.size() == 0 || kind == 0) {
          j["coloring"][0] = j["k"].get<int>() - 2;  // residue out of range
        } else if (kind == 1) {
          j["coloring"].erase(j["coloring"].size() - 1);
        } else {
          const auto edges = g.edges();
          const auto [u, v] = edges[rng() % edges.size()];
          j["coloring"][static_cast<std::size_t>(u)] = j["coloring"][static_cast<std::size_t>(v)];
        }
      } else {
        auto& vs = j["witness"]["vertices"];
        if (kind == 0) vs.push_back(g.order());
        else if (kind == 1) vs.push_back(vs[0]);
        else if (kind == 2) j["witness"]["reason"] = "Unproven";
        else j["status"] = "colored";
      }
      return j;
    };
    auto run_color = [&](const Instance& in) {
      const json j = cli::color_json(in.k, in.outcome);
      ++outputs;
      if (cli::verify_color_certificate(in.g, j)) ++accepted;
      ++tampers;
      if (cli::verify_color_certificate(in.g, tamper_color(in.g, j))) ++tamper_accepted;
    };
    for (const auto& in : exhaustive) run_color(in);
    for (const auto& in : randomized) run_color(in);
    for (const auto& in : even) run_color(in);

    const std::vector<TargetGraph> targets = {TargetGraph(named::complete(3)), TargetGraph::cycle(5),
                                              TargetGraph(named::complete(4))};
    for (int i = 0; i < 600; ++i) {
      const auto& h = targets[static_cast<std::size_t>(i) % targets.size()];
      const Graph g = testing::random_graph(2 + i % 9, 0.4, rng);
      std::optional<ListAssignment> lists;
      if (i % 2) lists = testing::random_lists(g.order(), h, rng);
      const json j = cli::hom_json(cli::solve_hom(g, h, lists, i % 5 == 0));
      ++outputs;
      if (cli::verify_hom_certificate(g, h, lists, j)) ++accepted;
      json bad = j;
      if (j["status"] == "feasible") {
        if (g.size() > 0 && coin(rng) < 2) {
          const auto edges = g.edges();
          const auto [u, v] = edges[rng() % edges.size()];
          bad["mapping"][static_cast<std::size_t>(u)] = bad["mapping"][static_cast<std::size_t>(v)];
        } else {
          bad["mapping"][0] = h.order();
        }
      } else {
        bad["obstruction"].push_back(g.order() + coin(rng));
      }
      ++tampers;
      if (cli::verify_hom_certificate(g, h, lists, bad)) ++tamper_accepted;
    }
    const bool ok = accepted == outputs && tamper_accepted <= kMaxViolations && tampers >= kMinTamperTrials;
    report.line(9, ok, "certificates verify, tampered certificates rejected",
                fmt("%d/%d outputs accepted, %d/%d tampered rejected", accepted, outputs, tampers - tamper_accepted,
                    tampers));
  }

  return report.failures == 0 ? 0 : 1;
}
