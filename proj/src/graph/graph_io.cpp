#include "cyclecert/graph_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

namespace cyclecert {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";

void warn(const ParseOptions& opts, std::string msg) {
  if (opts.warnings) opts.warnings->push_back(std::move(msg));
}

// Splits into lines while tracking each line's starting byte offset.
struct Line {
  std::string_view text;
  std::size_t offset;
};

std::vector<Line> split_lines(std::string_view input) {
  std::vector<Line> lines;
  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, start});
    if (end == input.size()) break;
    start = end + 1;
  }
  return lines;
}

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> tokenize(const Line& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto& s = line.text;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back({s.substr(i, j - i), line.offset + i});
    i = j;
  }
  return out;
}

long long parse_int(const Token& t) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
    throw FormatError("expected integer, got '" + std::string(t.text) + "'", t.offset);
  return value;
}

// Shared edge insertion with strict/lenient handling of loops and repeats.
void insert_edge(Graph& g, long long u, long long v, std::size_t offset, const ParseOptions& opts) {
  if (u < 0 || v < 0 || u >= g.order() || v >= g.order())
    throw FormatError("vertex id out of range in edge " + std::to_string(u) + " " + std::to_string(v), offset);
  if (u == v) {
    if (opts.strict) throw FormatError("self-loop at vertex " + std::to_string(u), offset);
    warn(opts, "dropped self-loop at byte " + std::to_string(offset));
    return;
  }
  if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
    if (opts.strict) throw FormatError("parallel edge " + std::to_string(u) + " " + std::to_string(v), offset);
    warn(opts, "collapsed parallel edge at byte " + std::to_string(offset));
  }
}

Graph parse_dimacs(std::string_view input, const ParseOptions& opts) {
  Graph g;
  bool have_header = false;
  long long declared_edges = 0;
  std::size_t seen_edges = 0;
  for (const auto& line : split_lines(input)) {
    auto tok = tokenize(line);
    if (tok.empty() || tok[0].text == "c") continue;
    if (tok[0].text == "p") {
      if (have_header) throw FormatError("duplicate problem line", line.offset);
      if (tok.size() != 4 || (tok[1].text != "edge" && tok[1].text != "col"))
        throw FormatError("malformed problem line, expected 'p edge n m'", line.offset);
      long long n = parse_int(tok[2]);
      declared_edges = parse_int(tok[3]);
      if (n < 0 || declared_edges < 0) throw FormatError("negative size in problem line", tok[2].offset);
      g = Graph(static_cast<int>(n));
      have_header = true;
    } else if (tok[0].text == "e") {
      if (!have_header) throw FormatError("edge line before problem line", line.offset);
      if (tok.size() != 3) throw FormatError("malformed edge line, expected 'e u v'", line.offset);
      insert_edge(g, parse_int(tok[1]) - 1, parse_int(tok[2]) - 1, line.offset, opts);
      ++seen_edges;
    } else {
      throw FormatError("unknown line type '" + std::string(tok[0].text) + "'", line.offset);
    }
  }
  if (!have_header) throw FormatError("missing problem line", 0);
  if (static_cast<long long>(seen_edges) != declared_edges) {
    std::string msg = "problem line declares " + std::to_string(declared_edges) + " edges but " +
                      std::to_string(seen_edges) + " were listed";
    if (opts.strict) throw FormatError(msg, input.size());
    warn(opts, msg);
  }
  return g;
}

Graph parse_edge_list(std::string_view input, const ParseOptions& opts) {
  long long declared_n = -1;
  struct Pending {
    long long u, v;
    std::size_t offset;
  };
  std::vector<Pending> pending;
  long long max_id = -1;
  for (const auto& line : split_lines(input)) {
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0].text.front() == '#') {
      // "# n <count>" fixes the vertex count; other comments are ignored.
      if (tok.size() == 3 && tok[0].text == "#" && tok[1].text == "n") {
        declared_n = parse_int(tok[2]);
        if (declared_n < 0) throw FormatError("negative vertex count", tok[2].offset);
      }
      continue;
    }
    if (tok.size() != 2) throw FormatError("expected 'u v' edge line", line.offset);
    long long u = parse_int(tok[0]), v = parse_int(tok[1]);
    if (u < 0 || v < 0) throw FormatError("negative vertex id", line.offset);
    max_id = std::max({max_id, u, v});
    pending.push_back({u, v, line.offset});
  }
  long long n = declared_n >= 0 ? declared_n : max_id + 1;
  Graph g(static_cast<int>(n));
  for (const auto& e : pending) insert_edge(g, e.u, e.v, e.offset, opts);
  return g;
}

void append_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

GraphFormat parse_format_name(std::string_view name) {
  if (name == "graph6" || name == "g6") return GraphFormat::graph6;
  if (name == "dimacs" || name == "col") return GraphFormat::dimacs;
  if (name == "edge-list" || name == "edges" || name == "edgelist") return GraphFormat::edge_list;
  throw std::invalid_argument("unknown graph format '" + std::string(name) + "'");
}

std::string_view format_name(GraphFormat f) {
  switch (f) {
    case GraphFormat::graph6: return "graph6";
    case GraphFormat::dimacs: return "dimacs";
    case GraphFormat::edge_list: return "edge-list";
  }
  return "unknown";
}

std::string to_graph6(const Graph& g) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(g.order());
  append_size(out, n);
  int acc = 0, bits = 0;
  for (Vertex j = 1; j < g.order(); ++j)
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

Graph from_graph6(std::string_view line, std::size_t base_offset) {
  if (line.starts_with(kGraph6Header)) {
    line.remove_prefix(kGraph6Header.size());
    base_offset += kGraph6Header.size();
  }
  if (line.empty()) throw FormatError("empty graph6 string", base_offset);
  auto value = [&](std::size_t pos) -> std::uint64_t {
    if (pos >= line.size()) throw FormatError("truncated graph6 string", base_offset + pos);
    auto c = static_cast<unsigned char>(line[pos]);
    if (c < 63 || c > 126) throw FormatError("byte outside graph6 range", base_offset + pos);
    return c - 63u;
  };
  std::uint64_t n = 0;
  std::size_t pos = 0;
  if (value(0) < 63) {
    n = value(0);
    pos = 1;
  } else if (line.size() > 1 && value(1) < 63) {
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | value(i);
    pos = 4;
  } else {
    for (std::size_t i = 2; i <= 7; ++i) n = (n << 6) | value(i);
    pos = 8;
  }
  if (n >= (1u << 18)) throw FormatError("graph6 order " + std::to_string(n) + " exceeds supported 2^18", base_offset);
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (line.size() - pos != bytes)
    throw FormatError("graph6 body has " + std::to_string(line.size() - pos) + " bytes, expected " +
                          std::to_string(bytes),
                      base_offset + pos);
  Graph g(static_cast<int>(n));
  std::uint64_t k = 0;
  for (Vertex j = 1; j < static_cast<Vertex>(n); ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      std::uint64_t byte = value(pos + k / 6);
      if ((byte >> (5 - k % 6)) & 1u) g.add_edge(i, j);
    }
  if (bits % 6 != 0) {
    std::uint64_t last = value(line.size() - 1);
    if (last & ((1u << (6 - bits % 6)) - 1)) throw FormatError("nonzero graph6 padding bits", base_offset + line.size() - 1);
  }
  return g;
}

std::vector<Graph> parse_graph6_lines(std::string_view text) {
  std::vector<Graph> out;
  for (const auto& line : split_lines(text)) {
    std::string_view s = line.text;
    std::size_t off = line.offset;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
      ++off;
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty() || s == kGraph6Header) continue;
    out.push_back(from_graph6(s, off));
  }
  return out;
}

Graph parse_graph(std::string_view input, GraphFormat format, const ParseOptions& opts) {
  switch (format) {
    case GraphFormat::graph6: {
      auto graphs = parse_graph6_lines(input);
      if (graphs.size() != 1)
        throw FormatError("expected exactly one graph6 graph, found " + std::to_string(graphs.size()), 0);
      return std::move(graphs.front());
    }
    case GraphFormat::dimacs: return parse_dimacs(input, opts);
    case GraphFormat::edge_list: return parse_edge_list(input, opts);
  }
  throw std::invalid_argument("unknown format");
}

std::string serialize_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  switch (format) {
    case GraphFormat::graph6: out << to_graph6(g) << '\n'; break;
    case GraphFormat::dimacs:
      out << "p edge " << g.order() << ' ' << g.size() << '\n';
      for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
      break;
    case GraphFormat::edge_list:
      out << "# n " << g.order() << '\n';
      for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
      break;
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cyclecert
