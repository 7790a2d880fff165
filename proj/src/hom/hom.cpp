#include "cyclecert/hom.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "cyclecert/graph_io.hpp"

namespace cyclecert {

TargetGraph::TargetGraph(Graph h) : graph_(std::move(h)) {
  if (graph_.order() > kMaxTargetOrder)
    throw std::invalid_argument("target graphs are limited to " + std::to_string(kMaxTargetOrder) + " vertices");
  adjacency_.assign(static_cast<std::size_t>(graph_.order()), 0);
  for (auto [a, b] : graph_.edges()) {
    adjacency_[static_cast<std::size_t>(a)] |= color_bit(b);
    adjacency_[static_cast<std::size_t>(b)] |= color_bit(a);
  }
  const int n = graph_.order();
  if (n >= 3 && graph_.size() == static_cast<std::size_t>(n) &&
      is_induced_cycle_in(graph_, CycleHandle{[n] {
        VertexSubset v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
        return v;
      }()}))
    cycle_length_ = n;
}

TargetGraph TargetGraph::cycle(int h) {
  if (h < 3) throw std::invalid_argument("target cycle needs at least 3 vertices");
  return TargetGraph(named::cycle(h));
}

ColorSet TargetGraph::all_colors() const {
  return order() == kMaxTargetOrder ? ~ColorSet{0} : color_bit(order()) - 1;
}

ListAssignment ListAssignment::full(int n, const TargetGraph& h) {
  return ListAssignment{std::vector<ColorSet>(static_cast<std::size_t>(n), h.all_colors())};
}

ListAssignment ListAssignment::restricted_to(std::span<const Vertex> vertices) const {
  ListAssignment out;
  out.lists.reserve(vertices.size());
  for (Vertex v : vertices) out.lists.push_back(of(v));
  return out;
}

ListAssignment parse_lists(std::string_view text, int n, const TargetGraph& h) {
  ListAssignment out = ListAssignment::full(n, h);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    const std::size_t line_offset = pos;
    pos = end + 1;
    auto colon = line.find(':');
    if (line.find_first_not_of(" \t\r") == std::string_view::npos || line.front() == '#') continue;
    if (colon == std::string_view::npos) throw FormatError("expected 'v: colors'", line_offset);
    auto read_int = [&](std::string_view tok, std::size_t off) {
      int value = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc{} || p != tok.data() + tok.size())
        throw FormatError("expected integer, got '" + std::string(tok) + "'", off);
      return value;
    };
    auto trim = [](std::string_view s) {
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) return std::string_view{};
      auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    int v = read_int(trim(line.substr(0, colon)), line_offset);
    if (v < 0 || v >= n) throw FormatError("list for vertex " + std::to_string(v) + " out of range", line_offset);
    ColorSet set = 0;
    std::string_view rest = line.substr(colon + 1);
    std::size_t i = 0;
    while (i < rest.size()) {
      while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t' && rest[j] != '\r') ++j;
      if (j > i) {
        const std::size_t off = line_offset + colon + 1 + i;
        int c = read_int(rest.substr(i, j - i), off);
        if (c < 0 || c >= h.order()) throw FormatError("color " + std::to_string(c) + " not a target vertex", off);
        set |= color_bit(c);
      }
      i = j;
    }
    out.lists[static_cast<std::size_t>(v)] = set;
  }
  return out;
}

std::string serialize_lists(const ListAssignment& lists) {
  std::ostringstream out;
  for (std::size_t v = 0; v < lists.lists.size(); ++v) {
    out << v << ':';
    for (ColorSet s = lists.lists[v]; s; s &= s - 1) out << ' ' << lowest_color(s);
    out << '\n';
  }
  return out.str();
}

namespace {

struct BudgetHit {};

class MacSearch {
public:
  MacSearch(const Graph& g, const TargetGraph& h, std::uint64_t max_nodes, SearchTranscript& transcript)
      : g_(g), h_(h), max_nodes_(max_nodes), transcript_(transcript), in_queue_(static_cast<std::size_t>(g.order()), 0) {}

  // Solves the component `comp` (sorted vertex ids) in place on `domains`.
  bool solve(std::vector<ColorSet>& domains, const VertexSubset& comp) {
    if (!propagate(domains, comp)) return false;
    return branch(domains, comp);
  }

private:
  ColorSet support(ColorSet dom) const {
    ColorSet s = 0;
    for (; dom; dom &= dom - 1) s |= h_.neighbors(lowest_color(dom));
    return s;
  }

  bool propagate(std::vector<ColorSet>& dom, const VertexSubset& seeds) {
    std::vector<Vertex> queue(seeds.begin(), seeds.end());
    for (Vertex v : queue) in_queue_[static_cast<std::size_t>(v)] = 1;
    bool ok = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      in_queue_[static_cast<std::size_t>(u)] = 0;
      if (!ok) continue;
      const ColorSet sup = support(dom[static_cast<std::size_t>(u)]);
      for (Vertex w : g_.neighbors(u)) {
        ColorSet& dw = dom[static_cast<std::size_t>(w)];
        const ColorSet nd = dw & sup;
        if (nd == dw) continue;
        dw = nd;
        if (nd == 0) {
          ok = false;
          break;
        }
        if (!in_queue_[static_cast<std::size_t>(w)]) {
          in_queue_[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) in_queue_[static_cast<std::size_t>(queue[i])] = 0;
    return ok;
  }

  bool branch(std::vector<ColorSet>& dom, const VertexSubset& comp) {
    Vertex pick = -1;
    int best_size = 0, best_degree = -1;
    for (Vertex v : comp) {
      const int size = color_count(dom[static_cast<std::size_t>(v)]);
      if (size < 2) continue;
      const int deg = g_.degree(v);
      if (pick == -1 || size < best_size || (size == best_size && deg > best_degree)) {
        pick = v;
        best_size = size;
        best_degree = deg;
      }
    }
    if (pick == -1) return true;
    for (ColorSet rest = dom[static_cast<std::size_t>(pick)]; rest; rest &= rest - 1) {
      const int c = lowest_color(rest);
      ++transcript_.nodes;
      transcript_.trace_hash = (transcript_.trace_hash ^ (static_cast<std::uint64_t>(pick) << 8 ^ static_cast<std::uint64_t>(c))) *
                               0x100000001b3ULL;
      if (max_nodes_ != 0 && transcript_.nodes > max_nodes_) throw BudgetHit{};
      std::vector<ColorSet> next = dom;
      next[static_cast<std::size_t>(pick)] = color_bit(c);
      if (propagate(next, VertexSubset{pick}) && branch(next, comp)) {
        dom = std::move(next);
        return true;
      }
    }
    return false;
  }

  const Graph& g_;
  const TargetGraph& h_;
  std::uint64_t max_nodes_;
  SearchTranscript& transcript_;
  std::vector<char> in_queue_;
};

}  // namespace

HomSearchResult search_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists,
                           const HomSearchOptions& opts) {
  HomSearchResult result;
  result.transcript.trace_hash = 0xcbf29ce484222325ULL;
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<ColorSet> domains(n, h.all_colors());
  if (lists) {
    if (lists->lists.size() != n) throw std::invalid_argument("list assignment size does not match graph order");
    for (std::size_t v = 0; v < n; ++v) domains[v] &= lists->lists[v];
  }
  if (std::any_of(domains.begin(), domains.end(), [](ColorSet d) { return d == 0; })) {
    result.status = HomStatus::infeasible;
    return result;
  }
  MacSearch search(g, h, opts.max_nodes, result.transcript);
  try {
    for (const auto& comp : connected_components(g)) {
      if (!search.solve(domains, comp)) {
        result.status = HomStatus::infeasible;
        return result;
      }
    }
  } catch (const BudgetHit&) {
    result.status = HomStatus::budget_exceeded;
    return result;
  }
  result.status = HomStatus::found;
  result.mapping.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.mapping[v] = lowest_color(domains[v]);
  return result;
}

std::optional<HomMapping> find_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists) {
  auto r = search_hom(g, h, lists);
  if (r.status == HomStatus::found) return std::move(r.mapping);
  return std::nullopt;
}

bool verify_hom(const Graph& g, const TargetGraph& h, const HomMapping& m, const std::optional<ListAssignment>& lists) {
  if (m.size() != static_cast<std::size_t>(g.order())) return false;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] < 0 || m[v] >= h.order()) return false;
    if (lists && !((lists->of(static_cast<Vertex>(v)) >> m[v]) & 1u)) return false;
  }
  for (auto [u, v] : g.edges())
    if (!h.adjacent(m[static_cast<std::size_t>(u)], m[static_cast<std::size_t>(v)])) return false;
  return true;
}

std::vector<std::vector<int>> enumerate_cycle_colorings(int m, int h) {
  if (m < 3 || h < 3) throw std::invalid_argument("cycle lengths must be at least 3");
  std::vector<std::vector<int>> out;
  std::vector<int> seq(static_cast<std::size_t>(m));
  auto adjacent = [h](int a, int b) { return (a - b + h) % h == 1 || (b - a + h) % h == 1; };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      if (adjacent(seq.back(), seq.front())) out.push_back(seq);
      return;
    }
    int prev = seq[static_cast<std::size_t>(i - 1)];
    int a = (prev + 1) % h, b = (prev + h - 1) % h;
    for (int c : {std::min(a, b), std::max(a, b)}) {
      if (a == b && c != a) continue;
      seq[static_cast<std::size_t>(i)] = c;
      self(self, i + 1);
    }
  };
  for (int c0 = 0; c0 < h; ++c0) {
    seq[0] = c0;
    rec(rec, 1);
  }
  return out;
}

}  // namespace cyclecert
