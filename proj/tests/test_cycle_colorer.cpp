#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclecert/cycle_colorer.hpp"
#include "cyclecert/graph_io.hpp"
#include "cyclecert/graph_search.hpp"
#include "cyclecert/obstruction_search.hpp"
#include "support/brute.hpp"
#include "support/random_graphs.hpp"

using namespace cyclecert;

namespace {

// Cycle 0..m-1 followed by extra vertices attached as listed.
Graph cycle_plus(int m, int extra, std::initializer_list<Edge> edges) {
  Graph g(m + extra);
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

CycleHandle first_cycle(int m) {
  CycleHandle c;
  for (int i = 0; i < m; ++i) c.vertices.push_back(i);
  return c;
}

bool has_repeat_in(const std::vector<int>& base, int from, int len) {
  const int m = static_cast<int>(base.size());
  for (int a = 0; a < len; ++a)
    for (int b = a + 1; b < len; ++b)
      if (base[static_cast<std::size_t>((from + a) % m)] == base[static_cast<std::size_t>((from + b) % m)]) return true;
  return false;
}

void check_sound(const Graph& g, int k, const ColorOutcome& o) {
  if (o.colored()) {
    CHECK(verify_cycle_coloring(g, o.coloring()));
    return;
  }
  const auto& w = o.witness();
  CHECK(w.oracle_verified);
  CHECK_FALSE(find_hom(induced_subgraph(g, w.vertices), TargetGraph::cycle(k - 2)));
  if (w.reason != WitnessReason::FallbackExtracted) {
    REQUIRE(w.size_bound);
    CHECK(static_cast<int>(w.vertices.size()) <= *w.size_bound);
    CHECK(*w.size_bound <= global_witness_bound(k));
  }
}

}  // namespace

TEST_CASE("reason names") {
  for (auto r : {WitnessReason::OddCycleTooShort, WitnessReason::EvenKOddCycle, WitnessReason::H0Exhausted,
                 WitnessReason::FixedColoringConflict, WitnessReason::ComponentConflict,
                 WitnessReason::PropagationConflict, WitnessReason::FallbackExtracted})
    CHECK(parse_reason(reason_name(r)) == r);
  CHECK_FALSE(parse_reason("Nonsense"));
  CHECK(reason_bound(WitnessReason::H0Exhausted, 7) == 49);
  CHECK(reason_bound(WitnessReason::PropagationConflict, 7) == 23);
  CHECK_FALSE(reason_bound(WitnessReason::FallbackExtracted, 7));
  CHECK(global_witness_bound(7) == 49);
}

TEST_CASE("classification around a C_k") {
  const Graph d = cycle_plus(7, 1, {{7, 0}, {7, 2}});
  auto cd = classify_neighbors(d, first_cycle(7), CycleCase::ck);
  CHECK(cd.kind[7] == NeighborKind::dtype);
  CHECK(cd.anchor[7] == 0);
  CHECK(cd.d[0] == VertexSubset{7});

  const Graph t = cycle_plus(7, 1, {{7, 0}, {7, 4}});
  auto ct = classify_neighbors(t, first_cycle(7), CycleCase::ck);
  CHECK(ct.kind[7] == NeighborKind::ttype);
  CHECK(ct.anchor[7] == 0);

  const Graph t3 = cycle_plus(7, 1, {{7, 0}, {7, 2}, {7, 4}});
  CHECK(classify_neighbors(t3, first_cycle(7), CycleCase::ck).kind[7] == NeighborKind::ttype);

  const Graph one = cycle_plus(7, 1, {{7, 0}});
  try {
    classify_neighbors(one, first_cycle(7), CycleCase::ck);
    FAIL("classified a pendant");
  } catch (const UnclassifiableNeighbor& e) {
    CHECK(e.vertex() == 7);
    REQUIRE(e.evidence_is_induced_path());
    CHECK(e.evidence().size() == 7);
    CHECK(is_induced_path_in(one, e.evidence()));
  }
}

TEST_CASE("classification around a C_{k-2}") {
  const Graph g = cycle_plus(5, 3, {{5, 0}, {5, 2}, {6, 1}, {7, 6}});
  auto c = classify_neighbors(g, first_cycle(5), CycleCase::ck2);
  CHECK(c.kind[5] == NeighborKind::ttype);
  CHECK(c.anchor[5] == 0);
  CHECK(c.kind[6] == NeighborKind::dtype);
  CHECK(c.anchor[6] == 1);
  CHECK(c.kind[7] == NeighborKind::outside);
  CHECK(c.outside == VertexSubset{7});
}

TEST_CASE("classification commutes with rotation") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 7 + 2 * (trial % 2);
    const Graph g = testing::random_pk_free(k, 20, rng, true);
    const auto odd = shortest_odd_cycle(g);
    if (!odd || odd->length() < k - 2) continue;
    CycleCase which = CycleCase::ck;
    auto c = find_induced_cycle(g, k);
    if (!c) {
      which = CycleCase::ck2;
      c = find_induced_cycle(g, k - 2);
    }
    REQUIRE(c);
    NeighborClassification base;
    try {
      base = classify_neighbors(g, *c, which);
    } catch (const NotPkFree&) {
      FAIL("generator produced a graph with an induced P_k");
    }
    const int m = c->length();
    for (int r = 1; r < m; ++r) {
      CycleHandle rot;
      for (int i = 0; i < m; ++i) rot.vertices.push_back(c->at(i + r));
      const auto cls = classify_neighbors(g, rot, which);
      CHECK(cls.kind == base.kind);
      for (int v = 0; v < g.order(); ++v) {
        const int a = base.anchor[static_cast<std::size_t>(v)];
        CHECK(cls.anchor[static_cast<std::size_t>(v)] == (a < 0 ? a : ((a - r) % m + m) % m));
      }
    }
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("trivial colouring") {
  const Graph c7 = named::cycle(7);
  auto plain = try_trivial_coloring(c7, 7, classify_neighbors(c7, first_cycle(7), CycleCase::ck));
  REQUIRE(plain);
  CHECK(verify_cycle_coloring(c7, *plain));

  const Graph d = cycle_plus(7, 1, {{7, 0}, {7, 2}});
  auto col = try_trivial_coloring(d, 7, classify_neighbors(d, first_cycle(7), CycleCase::ck));
  REQUIRE(col);
  CHECK(verify_cycle_coloring(d, *col));
  CHECK(col->residues[7] == col->residues[1]);

  const Graph t = cycle_plus(7, 1, {{7, 0}, {7, 4}});
  CHECK_FALSE(try_trivial_coloring(t, 7, classify_neighbors(t, first_cycle(7), CycleCase::ck)));
}

TEST_CASE("surviving colourings") {
  const auto all = enumerate_cycle_colorings(7, 5);
  auto in_full = [&](const std::vector<int>& b) { return std::find(all.begin(), all.end(), b) != all.end(); };

  const Graph t = cycle_plus(7, 1, {{7, 0}, {7, 4}});
  auto st = surviving_colorings(t, 7, classify_neighbors(t, first_cycle(7), CycleCase::ck));
  CHECK(st.extras == VertexSubset{7});
  CHECK_FALSE(st.bases.empty());
  CHECK(st.bases.size() <= 5);
  for (const auto& b : st.bases) {
    CHECK(in_full(b));
    CHECK(has_repeat_in(b, 0, 5));
  }

  const Graph d = cycle_plus(7, 2, {{7, 0}, {7, 2}, {8, 3}, {8, 5}, {7, 8}});
  auto cls = classify_neighbors(d, first_cycle(7), CycleCase::ck);
  REQUIRE(cls.d_plus3_edges.size() == 1);
  auto sd = surviving_colorings(d, 7, cls);
  CHECK(sd.extras == VertexSubset{7, 8});
  CHECK_FALSE(sd.bases.empty());
  CHECK(sd.bases.size() <= 5);
  for (const auto& b : sd.bases) {
    CHECK(in_full(b));
    CHECK(has_repeat_in(b, 0, 6));
  }
}

TEST_CASE("extension of a fixed base") {
  const std::vector<int> base = {1, 2, 3, 4, 0, 1, 2};
  REQUIRE(verify_hom(named::cycle(7), TargetGraph::cycle(5), base));

  const Graph t3 = cycle_plus(7, 1, {{7, 3}, {7, 0}});
  auto ok = extend_fixed_coloring_ck(t3, 7, classify_neighbors(t3, first_cycle(7), CycleCase::ck), base);
  REQUIRE(std::holds_alternative<CycleColoring>(ok));
  const auto& col = std::get<CycleColoring>(ok);
  CHECK(col.residues[7] == 0);
  CHECK(verify_cycle_coloring(t3, col));
  CHECK(std::equal(base.begin(), base.end(), col.residues.begin()));

  const Graph t0 = cycle_plus(7, 1, {{7, 0}, {7, 4}});
  auto bad = extend_fixed_coloring_ck(t0, 7, classify_neighbors(t0, first_cycle(7), CycleCase::ck), base);
  REQUIRE(std::holds_alternative<VertexSubset>(bad));
  CHECK(std::get<VertexSubset>(bad) == VertexSubset{7});
}

TEST_CASE("C_k case") {
  const Graph c7 = named::cycle(7);
  auto r = solve_ck_case(c7, 7, classify_neighbors(c7, first_cycle(7), CycleCase::ck));
  REQUIRE(std::holds_alternative<CycleColoring>(r.result));
  CHECK(verify_cycle_coloring(c7, std::get<CycleColoring>(r.result)));

  // No base colouring of this C_7 extends.
  const Graph g = from_graph6("JhciQ_E?YO_");
  auto o = color_or_witness(g, 7);
  REQUIRE_FALSE(o.colored());
  CHECK(o.witness().reason == WitnessReason::H0Exhausted);
  CHECK(o.witness().vertices.size() <= 49);
  check_sound(g, 7, o);
  REQUIRE(o.stats.h0_survivors.size() == 1);
  CHECK(o.stats.h0_survivors[0] <= 5);
}

TEST_CASE("C_{k-2} case") {
  const Graph c5 = named::cycle(5);
  auto id = solve_ck_free_case(c5, 7, classify_neighbors(c5, first_cycle(5), CycleCase::ck2));
  REQUIRE(std::holds_alternative<CycleColoring>(id.result));
  CHECK(std::get<CycleColoring>(id.result).residues == std::vector<int>{0, 1, 2, 3, 4});

  const Graph t = cycle_plus(5, 1, {{5, 0}, {5, 2}});
  auto forced = solve_ck_free_case(t, 7, classify_neighbors(t, first_cycle(5), CycleCase::ck2));
  REQUIRE(std::holds_alternative<CycleColoring>(forced.result));
  CHECK(std::get<CycleColoring>(forced.result).residues[5] == 1);
}

TEST_CASE("conflict witnesses in the C_{k-2} case") {
  struct Case {
    const char* g6;
    WitnessReason reason;
  };
  // D_0 vertex seeing T vertices coloured 3 and 2; a G - S vertex seeing T
  // vertices coloured 3 and 4; a D_0-D_1 edge forced small at one end and big
  // at the other.
  for (const Case& c : {Case{"Ghe@Yg", WitnessReason::FixedColoringConflict},
                        Case{"Ghck_K", WitnessReason::ComponentConflict},
                        Case{"HheAHWi", WitnessReason::PropagationConflict}}) {
    CAPTURE(c.g6);
    const Graph g = from_graph6(c.g6);
    REQUIRE_FALSE(find_induced_path(g, 7));
    REQUIRE_FALSE(find_induced_cycle(g, 7));
    auto o = color_or_witness(g, 7);
    REQUIRE_FALSE(o.colored());
    CHECK(o.witness().reason == c.reason);
    CHECK(o.witness().vertices.size() <= 23);
    CHECK(o.flags.empty());
    check_sound(g, 7, o);
  }
}

TEST_CASE("dispatch examples") {
  auto tri = color_or_witness(named::cycle(3), 7);
  REQUIRE_FALSE(tri.colored());
  CHECK(tri.witness().vertices == VertexSubset{0, 1, 2});
  CHECK(tri.witness().reason == WitnessReason::OddCycleTooShort);

  const Graph p5 = named::path(5);
  auto path = color_or_witness(p5, 8);
  REQUIRE(path.colored());
  const auto& res = path.coloring().residues;
  for (int v = 0; v < 5; ++v) CHECK(res[static_cast<std::size_t>(v)] == (v % 2 == 0 ? res[0] : res[1]));
  CHECK(std::abs(res[0] - res[1]) == 1);

  auto c7 = color_or_witness(named::cycle(7), 7);
  REQUIRE(c7.colored());
  CHECK(verify_hom(named::cycle(7), TargetGraph::cycle(5), c7.coloring().residues));

  auto k4 = color_or_witness(named::complete(4), 7);
  REQUIRE_FALSE(k4.colored());
  CHECK(k4.witness().vertices.size() <= 49);
  CHECK(brute::clique_number(induced_subgraph(named::complete(4), k4.witness().vertices)) >= 3);
  check_sound(named::complete(4), 7, k4);

  auto odd = color_or_witness(named::cycle(5), 6);
  REQUIRE_FALSE(odd.colored());
  CHECK(odd.witness().reason == WitnessReason::EvenKOddCycle);

  CHECK_THROWS_AS(color_or_witness(named::cycle(5), 4), std::invalid_argument);
}

TEST_CASE("input checks and structural violations") {
  ColorOptions verify;
  verify.verify_input = true;
  CHECK_THROWS_AS(color_or_witness(named::path(7), 7, verify), NotPkFree);
  CHECK(color_or_witness(named::path(6), 7, verify).colored());

  ColorOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(color_or_witness(named::cycle(9), 6, strict), NotPkFree);
  auto lenient = color_or_witness(named::cycle(9), 6);
  REQUIRE_FALSE(lenient.colored());
  CHECK(std::find(lenient.flags.begin(), lenient.flags.end(), "structural-violation-fallback") != lenient.flags.end());
  check_sound(named::cycle(9), 6, lenient);

  // A pendant on C_7 is an induced P_7.
  const Graph pendant = cycle_plus(7, 1, {{7, 0}});
  try {
    color_or_witness(pendant, 7, strict);
    FAIL("accepted an induced P_7");
  } catch (const NotPkFree& e) {
    if (e.evidence_is_induced_path()) CHECK(is_induced_path_in(pendant, e.evidence()));
  }
  auto fb = color_or_witness(pendant, 7);
  CHECK(fb.colored());
  check_sound(pendant, 7, fb);
}

TEST_CASE("exact fallback") {
  auto k4 = fallback_exact(named::complete(4), 5);
  REQUIRE(std::holds_alternative<Witness>(k4));
  CHECK(std::get<Witness>(k4).vertices == VertexSubset{0, 1, 2, 3});
  CHECK(std::get<Witness>(k4).reason == WitnessReason::FallbackExtracted);

  auto c5 = fallback_exact(named::cycle(5), 5);
  REQUIRE(std::holds_alternative<CycleColoring>(c5));
  CHECK(verify_cycle_coloring(named::cycle(5), std::get<CycleColoring>(c5)));

  CHECK_THROWS_AS(fallback_exact(named::cycle(7), 9, 1), FallbackBudgetExceeded);

  auto k5 = color_or_witness(named::complete(4), 5);
  REQUIRE_FALSE(k5.colored());
  CHECK(k5.witness().vertices.size() == 4);
}

TEST_CASE("witness minimisation") {
  Witness w;
  w.vertices = {0, 1, 2, 3, 4};
  const Graph k4i = disjoint_union(named::complete(4), Graph(1));
  auto m = minimize_witness(k4i, 5, w);
  CHECK_FALSE(m.budget_exhausted);
  CHECK(m.witness.vertices == VertexSubset{0, 1, 2, 3});
  auto again = minimize_witness(k4i, 5, m.witness);
  CHECK(again.witness.vertices == m.witness.vertices);

  const Graph tp = cycle_plus(3, 1, {{3, 0}});
  Witness t;
  t.vertices = {0, 1, 2, 3};
  CHECK(minimize_witness(tp, 7, t).witness.vertices == VertexSubset{0, 1, 2});

  auto starved = minimize_witness(k4i, 5, w, 1);
  CHECK(starved.budget_exhausted);
  CHECK(starved.witness.vertices == w.vertices);

  ColorOptions opts;
  opts.minimize_witness = true;
  const Graph g = from_graph6("HheAHWi");
  auto o = color_or_witness(g, 7, opts);
  REQUIRE_FALSE(o.colored());
  check_sound(g, 7, o);
  auto sub = induced_subgraph(g, o.witness().vertices);
  for (std::size_t i = 0; i < o.witness().vertices.size(); ++i) {
    VertexSubset rest;
    for (std::size_t j = 0; j < o.witness().vertices.size(); ++j)
      if (j != i) rest.push_back(static_cast<Vertex>(j));
    CHECK(find_hom(induced_subgraph(sub, rest), TargetGraph::cycle(5)));
  }
}

TEST_CASE("oracle rejects bad witnesses") {
  Witness w;
  w.vertices = {0, 1, 2};
  CHECK_FALSE(oracle_confirms_witness(named::path(3), 7, w));
  w.vertices = {0, 0, 1};
  CHECK_FALSE(oracle_confirms_witness(named::cycle(3), 7, w));
  w.vertices = {0, 1, 5};
  CHECK_FALSE(oracle_confirms_witness(named::cycle(3), 7, w));
  w.vertices = {0, 1, 2};
  CHECK(oracle_confirms_witness(named::cycle(3), 7, w));
  CHECK(w.oracle_verified);
}

TEST_CASE("colouring verifier") {
  CHECK(verify_cycle_coloring(named::cycle(5), CycleColoring{7, {0, 1, 2, 3, 4}}));
  CHECK_FALSE(verify_cycle_coloring(named::cycle(5), CycleColoring{7, {0, 1, 2, 3, 5}}));
  CHECK_FALSE(verify_cycle_coloring(named::cycle(5), CycleColoring{7, {0, 1, 2, 3}}));
  CHECK_FALSE(verify_cycle_coloring(named::cycle(5), CycleColoring{7, {0, 1, 2, 3, 3}}));
}

TEST_CASE("decision matches the oracle on all small P_k-free graphs") {
  const auto graphs = enumerate_small_graphs(7);
  for (int k = 6; k <= 9; ++k) {
    int tested = 0;
    for (const Graph& g : graphs) {
      if (brute::has_induced_path(g, k)) continue;
      ++tested;
      auto o = color_or_witness(g, k);
      CHECK(o.colored() == find_hom(g, TargetGraph::cycle(k - 2)).has_value());
      CHECK(o.flags.empty());
      check_sound(g, k, o);
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("random P_k-free graphs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 7 + 2 * (trial % 3);
    const Graph g = testing::random_pk_free(k, 10 + trial % 30, rng, trial % 4 != 0);
    auto o = color_or_witness(g, k);
    CHECK(o.colored() == find_hom(g, TargetGraph::cycle(k - 2)).has_value());
    CHECK(o.flags.empty());
    check_sound(g, k, o);
    for (int s : o.stats.h0_survivors) CHECK(s <= 5);
  }
}
