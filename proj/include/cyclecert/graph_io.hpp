#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cyclecert/graph.hpp"

namespace cyclecert {

enum class GraphFormat { graph6, dimacs, edge_list };

GraphFormat parse_format_name(std::string_view name);
std::string_view format_name(GraphFormat f);

class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

struct ParseOptions {
  // Strict mode rejects loops and repeated edges; lenient mode drops them and
  // records a warning.
  bool strict = true;
  std::vector<std::string>* warnings = nullptr;
};

Graph parse_graph(std::string_view input, GraphFormat format, const ParseOptions& opts = {});
std::string serialize_graph(const Graph& g, GraphFormat format);

// graph6 without trailing newline. Supports the 1-, 4- and 8-byte size headers.
std::string to_graph6(const Graph& g);
Graph from_graph6(std::string_view line, std::size_t base_offset = 0);

// One graph per non-empty line; an optional ">>graph6<<" header is skipped.
std::vector<Graph> parse_graph6_lines(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace cyclecert
