#include <algorithm>
#include <array>

#include "cyclecert/graph_search.hpp"
#include "cyclecert/tree_decomposition.hpp"
#include "internal.hpp"

namespace cyclecert {

using detail::LemmaGap;

namespace {

constexpr std::array<std::pair<WitnessReason, std::string_view>, 7> kReasonNames{{
    {WitnessReason::OddCycleTooShort, "OddCycleTooShort"},
    {WitnessReason::EvenKOddCycle, "EvenKOddCycle"},
    {WitnessReason::H0Exhausted, "H0Exhausted"},
    {WitnessReason::FixedColoringConflict, "FixedColoringConflict"},
    {WitnessReason::ComponentConflict, "ComponentConflict"},
    {WitnessReason::PropagationConflict, "PropagationConflict"},
    {WitnessReason::FallbackExtracted, "FallbackExtracted"},
}};

VertexSubset to_host(const VertexSubset& local, const VertexSubset& host) {
  VertexSubset out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(host[static_cast<std::size_t>(v)]);
  return out;
}

CycleColoring two_sided(int k, const std::vector<int>& side) { return CycleColoring{k, side}; }

// k consecutive vertices of an induced cycle longer than k.
VertexSubset cycle_stretch(const CycleHandle& c, int k) {
  VertexSubset p;
  for (int i = 0; i < k; ++i) p.push_back(c.at(i));
  return p;
}

CaseResult solve_odd_component(const Graph& h, int k, SolveStats& stats) {
  CaseResult out;
  const auto odd = shortest_odd_cycle(h);
  if (!odd) {
    const auto bip = std::get<Bipartition>(is_bipartite_certified(h));
    out.result = two_sided(k, bip.side);
    return out;
  }
  const int l = odd->length();
  if (l <= k - 4) {
    out.result = detail::finish_witness(h, k, odd->vertices, WitnessReason::OddCycleTooShort, out.flags);
    return out;
  }
  if (l > k) throw NotPkFree("shortest odd cycle is longer than k", cycle_stretch(*odd, k), true);

  if (auto ck = find_induced_cycle(h, k)) {
    ++stats.ck_components;
    return solve_ck_case(h, k, classify_neighbors(h, *ck, CycleCase::ck));
  }
  // No induced C_k, so the shortest odd cycle is an induced C_{k-2}.
  auto c = find_induced_cycle(h, k - 2);
  if (!c) c = *odd;
  ++stats.ck_free_components;
  return solve_ck_free_case(h, k, classify_neighbors(h, *c, CycleCase::ck2));
}

}  // namespace

std::string_view reason_name(WitnessReason r) {
  for (const auto& [reason, name] : kReasonNames)
    if (reason == r) return name;
  return "unknown";
}

std::optional<WitnessReason> parse_reason(std::string_view name) {
  for (const auto& [reason, n] : kReasonNames)
    if (n == name) return reason;
  return std::nullopt;
}

std::optional<int> reason_bound(WitnessReason r, int k) {
  switch (r) {
    case WitnessReason::OddCycleTooShort: return k - 4;
    case WitnessReason::EvenKOddCycle: return k - 1;
    case WitnessReason::H0Exhausted: return k + 42;
    case WitnessReason::FixedColoringConflict:
    case WitnessReason::ComponentConflict:
    case WitnessReason::PropagationConflict: return 3 * k + 2;
    case WitnessReason::FallbackExtracted: return std::nullopt;
  }
  return std::nullopt;
}

bool verify_cycle_coloring(const Graph& g, const CycleColoring& c) {
  if (c.k < 5 || static_cast<int>(c.residues.size()) != g.order()) return false;
  const int m = c.k - 2;
  for (int r : c.residues)
    if (r < 0 || r >= m) return false;
  return verify_hom(g, TargetGraph::cycle(m), c.residues);
}

bool oracle_confirms_witness(const Graph& g, int k, Witness& w) {
  w.oracle_verified = false;
  if (k < 5 || w.vertices.empty()) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : w.vertices) {
    if (v < 0 || v >= g.order() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  const auto r = search_hom(induced_subgraph(g, w.vertices), TargetGraph::cycle(k - 2));
  if (r.status != HomStatus::infeasible) return false;
  w.transcript = r.transcript;
  w.oracle_verified = true;
  return true;
}

MinimizeResult minimize_witness(const Graph& g, int k, const Witness& w, std::uint64_t budget) {
  const TargetGraph target = TargetGraph::cycle(k - 2);
  std::uint64_t spent = 0;
  auto colourable = [&](const VertexSubset& vs) -> std::optional<bool> {
    HomSearchOptions o;
    if (budget) {
      if (spent >= budget) return std::nullopt;
      o.max_nodes = budget - spent;
    }
    const auto r = search_hom(induced_subgraph(g, vs), target, std::nullopt, o);
    spent += r.transcript.nodes;
    if (r.status == HomStatus::budget_exceeded) return std::nullopt;
    return r.status == HomStatus::found;
  };

  VertexSubset keep = w.vertices;
  std::sort(keep.begin(), keep.end());
  const VertexSubset order = keep;
  for (Vertex v : order) {
    VertexSubset trial;
    for (Vertex u : keep)
      if (u != v) trial.push_back(u);
    const auto c = colourable(trial);
    if (!c) return MinimizeResult{w, true};
    if (!*c) keep = std::move(trial);
  }
  MinimizeResult out{w, false};
  out.witness.vertices = std::move(keep);
  if (!oracle_confirms_witness(g, k, out.witness)) throw std::logic_error("minimised witness became colourable");
  return out;
}

std::variant<CycleColoring, Witness> fallback_exact(const Graph& g, int k, std::uint64_t budget) {
  if (k < 5) throw std::invalid_argument("k must exceed 4");
  const TargetGraph target = TargetGraph::cycle(k - 2);
  HomSearchOptions o;
  o.max_nodes = budget;
  const auto r = search_hom(g, target, std::nullopt, o);
  if (r.status == HomStatus::budget_exceeded)
    throw FallbackBudgetExceeded("exact search exceeded " + std::to_string(budget) + " nodes");
  if (r.status == HomStatus::found) return CycleColoring{k, r.mapping};
  Witness w;
  w.vertices = minimal_obstruction_extract(g, target);
  w.reason = WitnessReason::FallbackExtracted;
  if (!oracle_confirms_witness(g, k, w)) throw std::logic_error("extracted obstruction is colourable");
  return w;
}

ColorOutcome color_or_witness(const Graph& g, int k, const ColorOptions& opts) {
  if (k <= 4) throw std::invalid_argument("k must exceed 4");
  ColorOutcome out;
  if (opts.verify_input) {
    if (g.order() <= opts.verify_input_max_order) {
      if (auto p = find_induced_path(g, k)) throw NotPkFree("input contains an induced P_k", *p, true);
    } else {
      out.flags.push_back("input-not-verified");
    }
  }

  auto fallback = [&](const Graph& h) {
    ++out.stats.fallbacks;
    return fallback_exact(h, k, opts.fallback_budget);
  };

  if (k % 2 == 0) {
    auto bip = is_bipartite_certified(g);
    if (auto* b = std::get_if<Bipartition>(&bip)) {
      out.result = two_sided(k, b->side);
    } else {
      const auto& odd = std::get<CycleHandle>(bip);
      if (odd.length() > k - 1) {
        if (opts.strict) throw NotPkFree("shortest odd cycle is longer than k - 1", cycle_stretch(odd, k), true);
        out.flags.push_back("structural-violation-fallback");
        out.result = fallback(g);
      } else {
        out.result = detail::finish_witness(g, k, odd.vertices, WitnessReason::EvenKOddCycle, out.flags);
      }
    }
  } else if (k == 5) {
    out.result = fallback(g);
  } else {
    CycleColoring colouring{k, std::vector<int>(static_cast<std::size_t>(g.order()), 0)};
    std::optional<Witness> witness;
    for (const auto& comp : connected_components(g)) {
      const Graph h = induced_subgraph(g, comp);
      std::variant<CycleColoring, Witness> r;
      try {
        CaseResult cr = solve_odd_component(h, k, out.stats);
        if (cr.h0_survivors) out.stats.h0_survivors.push_back(*cr.h0_survivors);
        out.flags.insert(out.flags.end(), cr.flags.begin(), cr.flags.end());
        r = std::move(cr.result);
      } catch (const UnclassifiableNeighbor& e) {
        if (opts.strict)
          throw UnclassifiableNeighbor(comp[static_cast<std::size_t>(e.vertex())], e.what(), to_host(e.evidence(), comp),
                                       e.evidence_is_induced_path());
        out.flags.push_back("structural-violation-fallback");
        r = fallback(h);
      } catch (const NotPkFree& e) {
        if (opts.strict) throw NotPkFree(e.what(), to_host(e.evidence(), comp), e.evidence_is_induced_path());
        out.flags.push_back("structural-violation-fallback");
        r = fallback(h);
      } catch (const LemmaGap& e) {
        out.flags.push_back("lemma-gap-fallback");
        r = fallback(h);
      }
      if (auto* c = std::get_if<CycleColoring>(&r)) {
        for (std::size_t i = 0; i < comp.size(); ++i) colouring.residues[static_cast<std::size_t>(comp[i])] = c->residues[i];
        continue;
      }
      Witness w = std::get<Witness>(std::move(r));
      w.vertices = to_host(w.vertices, comp);
      std::sort(w.vertices.begin(), w.vertices.end());
      witness = std::move(w);
      break;
    }
    if (witness) out.result = std::move(*witness);
    else out.result = std::move(colouring);
  }

  if (out.colored()) {
    if (!verify_cycle_coloring(g, out.coloring())) throw std::logic_error("emitted colouring fails verification");
    return out;
  }
  Witness& w = std::get<Witness>(out.result);
  if (!oracle_confirms_witness(g, k, w)) throw std::logic_error("emitted witness is colourable");
  if (opts.minimize_witness) {
    auto m = minimize_witness(g, k, w, opts.fallback_budget);
    if (m.budget_exhausted) out.flags.push_back("minimize-budget-exhausted");
    w = std::move(m.witness);
  }
  return out;
}

}  // namespace cyclecert
