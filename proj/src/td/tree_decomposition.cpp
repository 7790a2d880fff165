#include "cyclecert/tree_decomposition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cyclecert/graph_search.hpp"

namespace cyclecert {

int TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

TreeDecomposition dfs_decomposition(const Graph& g) {
  const int n = g.order();
  TreeDecomposition td;
  std::vector<int> bag_of(static_cast<std::size_t>(n), -1);
  std::vector<int> roots;
  VertexSubset path;
  std::vector<std::size_t> next;  // next neighbour index for each vertex on the path

  auto open = [&](Vertex v, int parent_bag) {
    path.push_back(v);
    next.push_back(0);
    bag_of[static_cast<std::size_t>(v)] = static_cast<int>(td.bags.size());
    td.bags.push_back(path);
    if (parent_bag >= 0) td.tree.emplace_back(parent_bag, bag_of[static_cast<std::size_t>(v)]);
  };

  for (Vertex s = 0; s < n; ++s) {
    if (bag_of[static_cast<std::size_t>(s)] != -1) continue;
    roots.push_back(static_cast<int>(td.bags.size()));
    open(s, -1);
    while (!path.empty()) {
      const Vertex u = path.back();
      const auto& nb = g.neighbors(u);
      std::size_t& i = next.back();
      while (i < nb.size() && bag_of[static_cast<std::size_t>(nb[i])] != -1) ++i;
      if (i == nb.size()) {
        path.pop_back();
        next.pop_back();
        continue;
      }
      open(nb[i], bag_of[static_cast<std::size_t>(u)]);
    }
  }

  if (roots.size() > 1) {
    const int shift = 1;
    for (auto& [a, b] : td.tree) a += shift, b += shift;
    td.bags.insert(td.bags.begin(), VertexSubset{});
    for (int r : roots) td.tree.emplace_back(0, r + shift);
  }
  return td;
}

bool validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int n = g.order();
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) return n == 0;
  // The bag tree itself: nb - 1 edges, connected.
  if (static_cast<int>(td.tree.size()) != nb - 1) return false;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nb));
  for (auto [a, b] : td.tree) {
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return false;
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<std::size_t>(nb), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b : adj[static_cast<std::size_t>(a)])
      if (!seen[static_cast<std::size_t>(b)]) seen[static_cast<std::size_t>(b)] = 1, ++reached, stack.push_back(b);
  }
  if (reached != nb) return false;

  std::vector<std::vector<char>> in(static_cast<std::size_t>(nb), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (int b = 0; b < nb; ++b)
    for (Vertex v : td.bags[static_cast<std::size_t>(b)]) {
      if (v < 0 || v >= n) return false;
      auto& cell = in[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)];
      if (cell) return false;
      cell = 1;
      ++count[static_cast<std::size_t>(v)];
    }
  for (Vertex v = 0; v < n; ++v)
    if (count[static_cast<std::size_t>(v)] == 0) return false;

  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int b = 0; b < nb && !covered; ++b)
      covered = in[static_cast<std::size_t>(b)][static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)];
    if (!covered) return false;
  }

  // A forest on the occurrence set is a tree iff it has |set| - 1 edges.
  for (Vertex v = 0; v < n; ++v) {
    int edges = 0;
    for (auto [a, b] : td.tree)
      if (in[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)] && in[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)]) ++edges;
    if (edges != count[static_cast<std::size_t>(v)] - 1) return false;
  }
  return true;
}

std::string dump_decomposition(const TreeDecomposition& td) {
  std::ostringstream out;
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << 'b' << i << ':';
    for (Vertex v : td.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (auto [a, b] : td.tree) out << "t: " << a << ' ' << b << '\n';
  return out.str();
}

namespace {

using Assignment = std::vector<int>;  // colours of the bag vertices, in bag order

struct BagTable {
  std::vector<Assignment> rows;
  // Per child: shared-vertex positions in this bag and in the child bag.
  std::vector<int> children;
  std::vector<std::vector<std::size_t>> here, there;
  // Per child: projection onto the shared vertices -> a child row.
  std::vector<std::map<Assignment, std::size_t>> child_index;
};

Assignment project(const Assignment& a, const std::vector<std::size_t>& pos) {
  Assignment p;
  p.reserve(pos.size());
  for (std::size_t i : pos) p.push_back(a[i]);
  return p;
}

}  // namespace

std::optional<HomMapping> dp_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists,
                                 const TreeDecomposition& td, const DpOptions& opts) {
  const int n = g.order();
  if (td.width() > opts.width_cap)
    throw WidthCapExceeded("decomposition width " + std::to_string(td.width()) + " exceeds cap " +
                           std::to_string(opts.width_cap));
  if (n == 0) return HomMapping{};
  const int nb = static_cast<int>(td.bags.size());
  const ListAssignment l = lists ? *lists : ListAssignment::full(n, h);

  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (const auto& b : td.bags)
    for (Vertex v : b) covered[static_cast<std::size_t>(v)] = 1;
  if (std::find(covered.begin(), covered.end(), 0) != covered.end())
    throw std::invalid_argument("decomposition does not cover every vertex");

  // Root at bag 0; order bags so that children come after parents.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nb));
  for (auto [a, b] : td.tree) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> order{0}, parent(static_cast<std::size_t>(nb), -1);
  std::vector<char> seen(static_cast<std::size_t>(nb), 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int c : adj[static_cast<std::size_t>(order[head])])
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        parent[static_cast<std::size_t>(c)] = order[head];
        order.push_back(c);
      }
  if (static_cast<int>(order.size()) != nb) throw std::invalid_argument("decomposition tree is not connected");

  std::vector<BagTable> tables(static_cast<std::size_t>(nb));
  for (int b : order)
    if (parent[static_cast<std::size_t>(b)] >= 0) tables[static_cast<std::size_t>(parent[static_cast<std::size_t>(b)])].children.push_back(b);

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int b = *it;
    BagTable& t = tables[static_cast<std::size_t>(b)];
    const VertexSubset& bag = td.bags[static_cast<std::size_t>(b)];
    for (int c : t.children) {
      const VertexSubset& cbag = td.bags[static_cast<std::size_t>(c)];
      std::vector<std::size_t> hp, tp;
      for (std::size_t i = 0; i < bag.size(); ++i) {
        auto f = std::find(cbag.begin(), cbag.end(), bag[i]);
        if (f != cbag.end()) hp.push_back(i), tp.push_back(static_cast<std::size_t>(f - cbag.begin()));
      }
      std::map<Assignment, std::size_t> index;
      const auto& crows = tables[static_cast<std::size_t>(c)].rows;
      for (std::size_t r = 0; r < crows.size(); ++r) index.emplace(project(crows[r], tp), r);
      if (index.empty()) return std::nullopt;
      t.here.push_back(std::move(hp));
      t.there.push_back(std::move(tp));
      t.child_index.push_back(std::move(index));
    }

    // Enumerate assignments of the bag consistent with lists and H-edges.
    Assignment a(bag.size(), -1);
    auto consistent_children = [&]() {
      for (std::size_t ci = 0; ci < t.children.size(); ++ci)
        if (!t.child_index[ci].count(project(a, t.here[ci]))) return false;
      return true;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == bag.size()) {
        if (consistent_children()) t.rows.push_back(a);
        return;
      }
      ColorSet allowed = l.of(bag[i]);
      for (std::size_t j = 0; j < i; ++j)
        if (g.has_edge(bag[i], bag[j])) allowed &= h.neighbors(a[j]);
      for (; allowed; allowed &= allowed - 1) {
        a[i] = lowest_color(allowed);
        self(self, i + 1);
      }
      a[i] = -1;
    };
    rec(rec, 0);
    if (t.rows.empty()) return std::nullopt;
  }

  // Read a mapping off the tables, parents first.
  HomMapping mapping(static_cast<std::size_t>(n), -1);
  std::vector<std::size_t> chosen(static_cast<std::size_t>(nb), 0);
  for (int b : order) {
    const BagTable& t = tables[static_cast<std::size_t>(b)];
    const Assignment& row = t.rows[chosen[static_cast<std::size_t>(b)]];
    const VertexSubset& bag = td.bags[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < bag.size(); ++i) mapping[static_cast<std::size_t>(bag[i])] = row[i];
    for (std::size_t ci = 0; ci < t.children.size(); ++ci)
      chosen[static_cast<std::size_t>(t.children[ci])] = t.child_index[ci].at(project(row, t.here[ci]));
  }
  return mapping;
}

VertexSubset minimal_obstruction_extract(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists) {
  const ListAssignment l = lists ? *lists : ListAssignment::full(g.order(), h);
  auto feasible = [&](const VertexSubset& keep) {
    return find_hom(induced_subgraph(g, keep), h, l.restricted_to(keep)).has_value();
  };
  VertexSubset keep(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) keep[static_cast<std::size_t>(v)] = v;
  if (feasible(keep)) throw std::invalid_argument("graph has a list homomorphism; nothing to extract");
  for (Vertex v = 0; v < g.order(); ++v) {
    VertexSubset trial;
    trial.reserve(keep.size());
    for (Vertex u : keep)
      if (u != v) trial.push_back(u);
    if (!feasible(trial)) keep = std::move(trial);
  }
  return keep;
}

std::optional<VertexSubset> clique_precheck(const Graph& g, const TargetGraph& h) {
  const int omega = clique_number(h.graph());
  const auto r = max_clique_leq(g, omega);
  if (const auto* found = std::get_if<CliqueFound>(&r)) return found->clique;
  return std::nullopt;
}

}  // namespace cyclecert
