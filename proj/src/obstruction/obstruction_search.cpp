#include "cyclecert/obstruction_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "cyclecert/graph_io.hpp"
#include "cyclecert/graph_search.hpp"

namespace cyclecert {

namespace {

// Iterated degree refinement; colours are ranks of sorted signatures, so the
// result does not depend on the labelling of g.
std::vector<int> equitable_colours(const Graph& g, std::vector<int> colour) {
  const int n = g.order();
  int classes = -1;
  for (;;) {
    std::vector<std::pair<std::vector<int>, Vertex>> sig;
    sig.reserve(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s{colour[static_cast<std::size_t>(v)]};
      for (Vertex w : g.neighbors(v)) s.push_back(colour[static_cast<std::size_t>(w)]);
      std::sort(s.begin() + 1, s.end());
      sig.emplace_back(std::move(s), v);
    }
    std::sort(sig.begin(), sig.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    int rank = -1;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (i == 0 || sig[i].first != sig[i - 1].first) ++rank;
      next[static_cast<std::size_t>(sig[i].second)] = rank;
    }
    colour = std::move(next);
    if (rank == classes) return colour;
    classes = rank;
  }
}

struct CanonSearch {
  const Graph& g;
  int n;
  std::vector<int> cell_of_position;
  std::vector<int> colour;
  std::vector<Vertex> perm;
  std::vector<char> used;
  std::vector<char> cur, best;
  std::vector<Vertex> best_perm;

  void run(int p) {
    if (p == n) {
      if (best_perm.empty() || cur < best) best = cur, best_perm = perm;
      return;
    }
    const auto off = static_cast<std::ptrdiff_t>(p) * (p - 1) / 2;
    for (Vertex v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || colour[static_cast<std::size_t>(v)] != cell_of_position[static_cast<std::size_t>(p)])
        continue;
      for (int i = 0; i < p; ++i)
        cur[static_cast<std::size_t>(off + i)] = g.has_edge(perm[static_cast<std::size_t>(i)], v) ? 1 : 0;
      // Prefix already above the best string: no completion can win.
      if (!best_perm.empty() &&
          std::lexicographical_compare(best.begin(), best.begin() + off + p, cur.begin(), cur.begin() + off + p))
        continue;
      used[static_cast<std::size_t>(v)] = 1;
      perm[static_cast<std::size_t>(p)] = v;
      run(p + 1);
      used[static_cast<std::size_t>(v)] = 0;
    }
  }
};

// Non-empty random subsets of V(H).
void random_lists(const Graph& g, const TargetGraph& h, std::mt19937_64& rng, ListAssignment& out) {
  std::uniform_int_distribution<ColorSet> pick(1, h.all_colors());
  out.lists.assign(static_cast<std::size_t>(g.order()), 0);
  for (auto& l : out.lists) l = pick(rng);
}

std::vector<int> as_labels(const ListAssignment& l) {
  std::vector<int> out;
  for (ColorSet s : l.lists) out.push_back(static_cast<int>(s));
  return out;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g, const std::vector<int>* labels) {
  const int n = g.order();
  if (labels && static_cast<int>(labels->size()) != n) throw std::invalid_argument("one label per vertex expected");
  std::vector<int> init(static_cast<std::size_t>(n), 0);
  if (labels) {
    std::vector<int> values = *labels;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (Vertex v = 0; v < n; ++v)
      init[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(values.begin(), values.end(), (*labels)[static_cast<std::size_t>(v)]) - values.begin());
  }
  CanonSearch s{g, n, {}, equitable_colours(g, init), std::vector<Vertex>(static_cast<std::size_t>(n)),
                std::vector<char>(static_cast<std::size_t>(n), 0), {}, {}, {}};
  s.cell_of_position = s.colour;
  std::sort(s.cell_of_position.begin(), s.cell_of_position.end());
  s.cur.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2, 0);
  s.run(0);

  CanonicalForm out;
  out.graph = Graph(n);
  out.position.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) out.position[static_cast<std::size_t>(s.best_perm[static_cast<std::size_t>(p)])] = p;
  for (auto [u, v] : g.edges()) out.graph.add_edge(out.position[static_cast<std::size_t>(u)], out.position[static_cast<std::size_t>(v)]);
  out.key = to_graph6(out.graph);
  if (labels) {
    out.labels.resize(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) out.labels[static_cast<std::size_t>(p)] = (*labels)[static_cast<std::size_t>(s.best_perm[static_cast<std::size_t>(p)])];
    out.key += ':';
    for (int p = 0; p < n; ++p) out.key += (p ? "," : "") + std::to_string(out.labels[static_cast<std::size_t>(p)]);
  }
  return out;
}

int enumeration_cap() {
  if (const char* env = std::getenv("CYCLECERT_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 16) return static_cast<int>(v);
  }
  return 8;
}

void enumerate_small_graphs(int n_max, const std::function<void(const Graph&)>& visit) {
  if (n_max > enumeration_cap())
    throw CapacityExceeded("max order " + std::to_string(n_max) + " exceeds enumeration cap " +
                           std::to_string(enumeration_cap()));
  if (n_max < 1) return;
  std::vector<Graph> level{Graph(1)};
  visit(level.front());
  for (int n = 2; n <= n_max; ++n) {
    std::map<std::string, Graph> next;
    for (const Graph& base : level)
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        Graph g(n);
        for (auto [u, v] : base.edges()) g.add_edge(u, v);
        for (int u = 0; u < n - 1; ++u)
          if ((mask >> u) & 1u) g.add_edge(u, n - 1);
        auto cf = canonical_form(g);
        next.emplace(std::move(cf.key), std::move(cf.graph));
      }
    level.clear();
    for (auto& [key, g] : next) {
      visit(g);
      level.push_back(std::move(g));
    }
  }
}

std::vector<Graph> enumerate_small_graphs(int n_max) {
  std::vector<Graph> out;
  enumerate_small_graphs(n_max, [&](const Graph& g) { out.push_back(g); });
  return out;
}

ClassSpec critical_spec(int k, int c) {
  if (c < 2) throw std::invalid_argument("criticality needs c >= 2");
  return ClassSpec{k, std::nullopt, TargetGraph(named::complete(c - 1)), MinimalityMode::subgraph};
}

bool filter_class(const Graph& g, const ClassSpec& spec) {
  if (find_induced_path(g, spec.k)) return false;
  return !spec.t || !find_induced_biclique(g, *spec.t);
}

bool is_minimal_obstruction(const Graph& g, const TargetGraph& h, MinimalityMode mode,
                            const std::optional<ListAssignment>& lists) {
  const int n = g.order();
  const ListAssignment l = lists ? *lists : ListAssignment::full(n, h);
  if (find_hom(g, h, l)) return false;
  for (Vertex v = 0; v < n; ++v) {
    VertexSubset keep;
    for (Vertex u = 0; u < n; ++u)
      if (u != v) keep.push_back(u);
    if (!find_hom(induced_subgraph(g, keep), h, l.restricted_to(keep))) return false;
  }
  if (mode == MinimalityMode::subgraph)
    for (auto [u, v] : g.edges()) {
      Graph smaller = g;
      smaller.remove_edge(u, v);
      if (!find_hom(smaller, h, l)) return false;
    }
  if (lists)
    for (Vertex v = 0; v < n; ++v)
      for (ColorSet extra = h.all_colors() & ~l.of(v); extra; extra &= extra - 1) {
        ListAssignment wider = l;
        wider.lists[static_cast<std::size_t>(v)] |= color_bit(lowest_color(extra));
        if (!find_hom(g, h, wider)) return false;
      }
  return true;
}

ObstructionCatalog find_minimal_obstructions(const ClassSpec& spec, int n_max) {
  ObstructionCatalog cat{spec, n_max, {}};
  enumerate_small_graphs(n_max, [&](const Graph& g) {
    if (!filter_class(g, spec) || !is_minimal_obstruction(g, spec.target, spec.mode)) return;
    CatalogEntry e;
    e.graph = g;
    e.key = to_graph6(g);
    e.verified_minimal = true;
    e.pk_free = true;
    if (spec.t) e.biclique_free = true;
    cat.entries.push_back(std::move(e));
  });
  return cat;
}

ObstructionCatalog find_minimal_list_obstructions(const ClassSpec& spec, int n_max, const ListSampling& sampling) {
  ObstructionCatalog cat{spec, n_max, {}};
  std::mt19937_64 rng(sampling.seed);
  std::map<std::pair<int, std::string>, CatalogEntry> found;
  enumerate_small_graphs(n_max, [&](const Graph& g) {
    if (!filter_class(g, spec)) return;
    ListAssignment l;
    for (int s = 0; s < sampling.samples_per_graph; ++s) {
      random_lists(g, spec.target, rng, l);
      if (!is_minimal_obstruction(g, spec.target, spec.mode, l)) continue;
      const auto labels = as_labels(l);
      auto cf = canonical_form(g, &labels);
      CatalogEntry e;
      e.graph = cf.graph;
      e.key = cf.key;
      e.lists = ListAssignment{};
      for (int c : cf.labels) e.lists->lists.push_back(static_cast<ColorSet>(c));
      e.verified_minimal = true;
      e.pk_free = true;
      if (spec.t) e.biclique_free = true;
      found.emplace(std::make_pair(g.order(), e.key), std::move(e));
    }
  });
  for (auto& [key, e] : found) cat.entries.push_back(std::move(e));
  return cat;
}

bool recheck_catalog(const ObstructionCatalog& catalog) {
  std::set<std::string> keys;
  for (const auto& e : catalog.entries) {
    if (!filter_class(e.graph, catalog.spec)) return false;
    if (!is_minimal_obstruction(e.graph, catalog.spec.target, catalog.spec.mode, e.lists)) return false;
    std::optional<std::vector<int>> labels;
    if (e.lists) labels = as_labels(*e.lists);
    if (!keys.insert(canonical_form(e.graph, labels ? &*labels : nullptr).key).second) return false;
  }
  return true;
}

std::string catalog_graph6(const ObstructionCatalog& catalog) {
  std::string out;
  for (const auto& e : catalog.entries) out += to_graph6(e.graph) + '\n';
  return out;
}

std::string catalog_json(const ObstructionCatalog& catalog) {
  nlohmann::json j;
  j["k"] = catalog.spec.k;
  j["t"] = catalog.spec.t ? nlohmann::json(*catalog.spec.t) : nlohmann::json(nullptr);
  j["target"] = to_graph6(catalog.spec.target.graph());
  j["mode"] = catalog.spec.mode == MinimalityMode::induced ? "induced" : "subgraph";
  j["n_max"] = catalog.n_max;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : catalog.entries) {
    nlohmann::json x;
    x["graph6"] = to_graph6(e.graph);
    x["n"] = e.order();
    x["verified_minimal"] = e.verified_minimal;
    x["pk_free"] = e.pk_free;
    x["biclique_free"] = e.biclique_free ? nlohmann::json(*e.biclique_free) : nlohmann::json(nullptr);
    if (e.lists) {
      nlohmann::json ls = nlohmann::json::array();
      for (ColorSet s : e.lists->lists) {
        nlohmann::json one = nlohmann::json::array();
        for (; s; s &= s - 1) one.push_back(lowest_color(s));
        ls.push_back(one);
      }
      x["lists"] = ls;
    }
    j["entries"].push_back(x);
  }
  return j.dump(2) + '\n';
}

}  // namespace cyclecert
