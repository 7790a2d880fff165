#include "cyclecert/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cyclecert/graph_io.hpp"
#include "cyclecert/obstruction_search.hpp"
#include "cyclecert/tree_decomposition.hpp"

namespace cyclecert::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

GraphFormat format_for(const std::string& path, const std::string& requested) {
  if (requested != "auto") return parse_format_name(requested);
  auto ends = [&](std::string_view s) { return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0; };
  if (ends(".col") || ends(".dimacs")) return GraphFormat::dimacs;
  if (ends(".edges") || ends(".el") || ends(".txt")) return GraphFormat::edge_list;
  return GraphFormat::graph6;
}

std::vector<Graph> load_graphs(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  const GraphFormat f = format_for(path, format);
  if (f == GraphFormat::graph6) return parse_graph6_lines(text);
  return {parse_graph(text, f)};
}

Graph load_one(const std::string& path, const std::string& format) {
  auto gs = load_graphs(path, format);
  if (gs.size() != 1) throw UsageError("expected exactly one graph in '" + path + "'");
  return gs.front();
}

std::vector<json> load_json_lines(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<json> out;
  // A single document, or one document per line.
  try {
    out.push_back(json::parse(text));
    return out;
  } catch (const json::parse_error&) {
  }
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(json::parse(line));
    start = end + 1;
  }
  return out;
}

std::optional<VertexSubset> as_vertex_list(const json& j, int n, std::string* why) {
  if (!j.is_array()) {
    if (why) *why = "vertex list is not an array";
    return std::nullopt;
  }
  VertexSubset vs;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& x : j) {
    if (!x.is_number_integer()) {
      if (why) *why = "vertex id is not an integer";
      return std::nullopt;
    }
    const auto v = x.get<long long>();
    if (v < 0 || v >= n) {
      if (why) *why = "vertex " + std::to_string(v) + " is not in the graph";
      return std::nullopt;
    }
    if (seen[static_cast<std::size_t>(v)]) {
      if (why) *why = "vertex " + std::to_string(v) + " listed twice";
      return std::nullopt;
    }
    seen[static_cast<std::size_t>(v)] = 1;
    vs.push_back(static_cast<Vertex>(v));
  }
  return vs;
}

std::optional<std::vector<int>> as_int_array(const json& j, std::size_t n, std::string* why) {
  if (!j.is_array() || j.size() != n) {
    if (why) *why = "mapping must list one value per vertex";
    return std::nullopt;
  }
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) {
      if (why) *why = "mapping value is not an integer";
      return std::nullopt;
    }
    const auto v = x.get<long long>();
    if (v < 0 || v > kMaxTargetOrder) {
      if (why) *why = "mapping value out of range";
      return std::nullopt;
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

bool fail(std::string* why, const std::string& text) {
  if (why) *why = text;
  return false;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

// ---- color ----

struct ColorArgs {
  int k = 0;
  std::string format = "auto";
  bool verify_input = false, minimize = false, strict = false;
  std::uint64_t fallback_budget = ColorOptions{}.fallback_budget;
  int jobs = 1;
  std::string output;
  std::vector<std::string> inputs;
};

int cmd_color(const ColorArgs& a, std::ostream& out, std::ostream& err) {
  if (a.k <= 4) throw UsageError("--k must exceed 4");
  if (a.jobs < 1) throw UsageError("--jobs must be positive");
  std::vector<Graph> graphs;
  for (const auto& path : a.inputs) {
    auto gs = load_graphs(path, a.format);
    graphs.insert(graphs.end(), std::make_move_iterator(gs.begin()), std::make_move_iterator(gs.end()));
  }
  ColorOptions opts;
  opts.verify_input = a.verify_input;
  opts.strict = a.strict;
  opts.minimize_witness = a.minimize;
  opts.fallback_budget = a.fallback_budget;

  std::vector<json> results(graphs.size());
  std::vector<int> codes(graphs.size(), kSuccess);
  auto solve = [&](std::size_t i) {
    try {
      const auto outcome = color_or_witness(graphs[i], a.k, opts);
      results[i] = color_json(a.k, outcome);
      codes[i] = outcome.colored() ? kSuccess : kCertificate;
    } catch (const NotPkFree& e) {
      results[i] = color_error_json(a.k, e.what(), &e.evidence());
      codes[i] = kError;
    } catch (const std::exception& e) {
      results[i] = color_error_json(a.k, e.what());
      codes[i] = kError;
    }
  };
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < graphs.size();) solve(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(a.jobs, static_cast<int>(graphs.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string text;
  for (const auto& r : results) text += r.dump() + '\n';
  write_output(a.output, text, out);
  int colored = 0, witnesses = 0, errors = 0;
  for (int c : codes) (c == kSuccess ? colored : c == kCertificate ? witnesses : errors)++;
  err << graphs.size() << " graph(s): " << colored << " coloured, " << witnesses << " witness, " << errors << " error\n";
  return *std::max_element(codes.begin(), codes.end());
}

// ---- hom ----

struct HomArgs {
  std::string target, lists, format = "auto", output, input;
  bool cross_check = false;
};

int cmd_hom(const HomArgs& a, std::ostream& out, std::ostream& err) {
  const TargetGraph h(load_one(a.target, "auto"));
  if (h.order() > kMaxTargetOrder) throw UsageError("target has more than 64 vertices");
  const auto graphs = load_graphs(a.input, a.format);
  std::string text;
  int code = kSuccess;
  for (const Graph& g : graphs) {
    std::optional<ListAssignment> lists;
    if (!a.lists.empty()) lists = parse_lists(read_file(a.lists), g.order(), h);
    const HomAnswer ans = solve_hom(g, h, lists, a.cross_check);
    text += hom_json(ans).dump() + '\n';
    code = std::max(code, ans.feasible ? int{kSuccess} : int{kCertificate});
    err << (ans.feasible ? "feasible" : "infeasible") << " (" << ans.method << ")\n";
  }
  write_output(a.output, text, out);
  return code;
}

// ---- search ----

struct SearchArgs {
  std::optional<int> k, t;
  std::string target, mode = "induced", output;
  std::optional<int> max_n, critical;
  int list_samples = 0;
  std::uint64_t seed = 1;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.max_n) throw UsageError("--max-n is required");
  if (*a.max_n > enumeration_cap())
    throw CapacityExceeded("--max-n " + std::to_string(*a.max_n) + " exceeds the enumeration cap of " +
                           std::to_string(enumeration_cap()));
  if (!a.k) throw UsageError("--k is required");
  if (a.t && *a.t < 1) throw UsageError("--t must be positive");
  ClassSpec spec;
  if (a.critical) {
    if (!a.target.empty()) throw UsageError("--critical and --target are exclusive");
    spec = critical_spec(*a.k, *a.critical);
  } else {
    if (a.target.empty()) throw UsageError("--target or --critical is required");
    spec.k = *a.k;
    spec.target = TargetGraph(load_one(a.target, "auto"));
    spec.mode = a.mode == "subgraph" ? MinimalityMode::subgraph : MinimalityMode::induced;
  }
  spec.t = a.t;
  const ObstructionCatalog cat = a.list_samples > 0
                                     ? find_minimal_list_obstructions(spec, *a.max_n, ListSampling{a.list_samples, a.seed})
                                     : find_minimal_obstructions(spec, *a.max_n);
  if (a.output.empty()) {
    out << catalog_json(cat);
  } else {
    write_output(a.output, catalog_graph6(cat), out);
    write_output(a.output + ".json", catalog_json(cat), out);
  }
  err << cat.entries.size() << " minimal obstruction(s) up to " << *a.max_n << " vertices\n";
  return kSuccess;
}

// ---- verify ----

struct VerifyArgs {
  std::string graph, result, target, lists, format = "auto";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto graphs = load_graphs(a.graph, a.format);
  const auto results = load_json_lines(a.result);
  if (graphs.size() != results.size())
    throw UsageError(std::to_string(results.size()) + " result(s) for " + std::to_string(graphs.size()) + " graph(s)");
  std::optional<TargetGraph> h;
  if (!a.target.empty()) h = TargetGraph(load_one(a.target, "auto"));
  bool all = true;
  json report = json::array();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    std::string why;
    bool ok;
    const json& r = results[i];
    if (r.contains("k")) {
      ok = verify_color_certificate(graphs[i], r, &why);
    } else {
      if (!h) throw UsageError("hom results need --target");
      std::optional<ListAssignment> lists;
      if (!a.lists.empty()) lists = parse_lists(read_file(a.lists), graphs[i].order(), *h);
      ok = verify_hom_certificate(graphs[i], *h, lists, r, &why);
    }
    all = all && ok;
    report.push_back(ok ? json{{"valid", true}} : json{{"valid", false}, {"reason", why}});
    if (!ok) err << "certificate " << i << " rejected: " << why << '\n';
  }
  out << (report.size() == 1 ? report[0] : report).dump() << '\n';
  return all ? kSuccess : kCertificate;
}

}  // namespace

json color_json(int k, const ColorOutcome& outcome) {
  json j;
  j["status"] = outcome.colored() ? "colored" : "witness";
  j["k"] = k;
  j["coloring"] = nullptr;
  j["witness"] = nullptr;
  if (outcome.colored()) {
    j["coloring"] = outcome.coloring().residues;
  } else {
    const Witness& w = outcome.witness();
    j["witness"] = {{"vertices", w.vertices}, {"reason", std::string(reason_name(w.reason))}, {"oracle_verified", w.oracle_verified}};
  }
  j["flags"] = outcome.flags;
  return j;
}

json color_error_json(int k, const std::string& message, const VertexSubset* evidence) {
  json j;
  j["status"] = "error";
  j["k"] = k;
  j["coloring"] = nullptr;
  j["witness"] = nullptr;
  j["flags"] = json::array();
  j["error"] = message;
  if (evidence) j["evidence"] = *evidence;
  return j;
}

HomAnswer solve_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists, bool cross_check) {
  HomAnswer a;
  std::optional<HomMapping> m;
  try {
    m = dp_hom(g, h, lists, dfs_decomposition(g));
    a.method = "dp";
  } catch (const WidthCapExceeded&) {
    m = find_hom(g, h, lists);
    a.method = "search";
  }
  if (cross_check) {
    if (find_hom(g, h, lists).has_value() != m.has_value())
      throw std::logic_error("dynamic programming and search disagree");
    a.cross_checked = true;
  }
  a.feasible = m.has_value();
  if (m) {
    if (!verify_hom(g, h, *m, lists)) throw std::logic_error("produced mapping is not a list homomorphism");
    a.mapping = std::move(*m);
  } else {
    a.obstruction = minimal_obstruction_extract(g, h, lists);
  }
  return a;
}

json hom_json(const HomAnswer& a) {
  json j;
  j["status"] = a.feasible ? "feasible" : "infeasible";
  j["mapping"] = a.feasible ? json(a.mapping) : json(nullptr);
  j["obstruction"] = a.feasible ? json(nullptr) : json(a.obstruction);
  j["method"] = a.method;
  j["cross_checked"] = a.cross_checked;
  return j;
}

bool verify_color_certificate(const Graph& g, const json& r, std::string* why) {
  if (!r.is_object() || !r.contains("k") || !r["k"].is_number_integer()) return fail(why, "missing k");
  const auto k = r["k"].get<long long>();
  if (k <= 4 || k - 2 > kMaxTargetOrder) return fail(why, "k out of range");
  const std::string status = r.value("status", "");
  if (status == "colored") {
    if (!r.contains("coloring")) return fail(why, "missing coloring");
    auto c = as_int_array(r["coloring"], static_cast<std::size_t>(g.order()), why);
    if (!c) return false;
    if (!verify_cycle_coloring(g, CycleColoring{static_cast<int>(k), *c}))
      return fail(why, "coloring is not a homomorphism into C_" + std::to_string(k - 2));
    return true;
  }
  if (status == "witness") {
    if (!r.contains("witness") || !r["witness"].is_object()) return fail(why, "missing witness");
    const json& w = r["witness"];
    if (!w.contains("vertices")) return fail(why, "missing witness vertices");
    auto vs = as_vertex_list(w["vertices"], g.order(), why);
    if (!vs) return false;
    if (!w.contains("reason") || !w["reason"].is_string()) return fail(why, "missing witness reason");
    const auto reason = parse_reason(w["reason"].get<std::string>());
    if (!reason) return fail(why, "unknown witness reason");
    if (const auto bound = reason_bound(*reason, static_cast<int>(k)); bound && static_cast<int>(vs->size()) > *bound)
      return fail(why, "witness exceeds the bound for its reason");
    Witness witness;
    witness.vertices = *vs;
    if (!oracle_confirms_witness(g, static_cast<int>(k), witness)) return fail(why, "witness subgraph is colourable");
    return true;
  }
  return fail(why, "status '" + status + "' carries no certificate");
}

bool verify_hom_certificate(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists,
                            const json& r, std::string* why) {
  if (!r.is_object()) return fail(why, "result is not an object");
  const std::string status = r.value("status", "");
  if (status == "feasible") {
    if (!r.contains("mapping")) return fail(why, "missing mapping");
    auto m = as_int_array(r["mapping"], static_cast<std::size_t>(g.order()), why);
    if (!m) return false;
    for (int c : *m)
      if (c >= h.order()) return fail(why, "mapping value out of range");
    if (!verify_hom(g, h, *m, lists)) return fail(why, "mapping is not a list homomorphism");
    return true;
  }
  if (status == "infeasible") {
    if (!r.contains("obstruction")) return fail(why, "missing obstruction");
    auto vs = as_vertex_list(r["obstruction"], g.order(), why);
    if (!vs) return false;
    const ListAssignment l = lists ? *lists : ListAssignment::full(g.order(), h);
    if (find_hom(induced_subgraph(g, *vs), h, l.restricted_to(*vs))) return fail(why, "obstruction is colourable");
    return true;
  }
  return fail(why, "status '" + status + "' carries no certificate");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certifying C_{k-2}-colouring of P_k-free graphs and list homomorphism tools", "cyclecert"};
  app.require_subcommand(1);

  ColorArgs ca;
  auto* color = app.add_subcommand("color", "colour into C_{k-2} or return a non-colourable induced subgraph");
  color->add_option("--k", ca.k, "path length k (> 4)")->required();
  color->add_option("--format", ca.format, "graph6, dimacs, edge-list or auto")->capture_default_str();
  color->add_flag("--verify-input", ca.verify_input, "check P_k-freeness first (small graphs)");
  color->add_flag("--minimize-witness", ca.minimize, "shrink witnesses to inclusion-minimal ones");
  color->add_flag("--strict", ca.strict, "report structural violations instead of falling back");
  color->add_option("--fallback-budget", ca.fallback_budget, "search nodes for the exact fallback")->capture_default_str();
  color->add_option("--jobs", ca.jobs, "graphs solved in parallel")->capture_default_str();
  color->add_option("-o,--output", ca.output, "write JSON lines here");
  color->add_option("inputs", ca.inputs, "graph files")->required();

  HomArgs ha;
  auto* hom = app.add_subcommand("hom", "list homomorphism into a target graph, or a minimal obstruction");
  hom->add_option("--target", ha.target, "target graph file")->required();
  hom->add_option("--lists", ha.lists, "list file, lines 'v: c1 c2 ...'");
  hom->add_option("--format", ha.format, "input format")->capture_default_str();
  hom->add_flag("--cross-check", ha.cross_check, "confirm the decision with backtracking search");
  hom->add_option("-o,--output", ha.output, "write JSON here");
  hom->add_option("input", ha.input, "graph file")->required();

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "catalog minimal non-colourable graphs of a hereditary class");
  search->add_option("--k", sa.k, "forbid induced P_k");
  search->add_option("--t", sa.t, "forbid induced K_{t,t}");
  search->add_option("--target", sa.target, "target graph file");
  search->add_option("--critical", sa.critical, "c-critical graphs (target K_{c-1}, subgraph order)");
  search->add_option("--mode", sa.mode, "induced or subgraph")->check(CLI::IsMember({"induced", "subgraph"}))->capture_default_str();
  search->add_option("--max-n", sa.max_n, "largest order enumerated");
  search->add_option("--list-samples", sa.list_samples, "random list assignments per graph (0 = plain colouring)");
  search->add_option("--seed", sa.seed, "seed for list sampling")->capture_default_str();
  search->add_option("-o,--output", sa.output, "write graph6 here and metadata to <path>.json");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a colouring or homomorphism certificate");
  verify->add_option("--graph", va.graph, "graph file")->required();
  verify->add_option("--result", va.result, "result JSON (or JSON lines)")->required();
  verify->add_option("--target", va.target, "target graph for hom results");
  verify->add_option("--lists", va.lists, "list file for hom results");
  verify->add_option("--format", va.format, "graph format")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kError;
  }

  try {
    if (*color) return cmd_color(ca, out, err);
    if (*hom) return cmd_hom(ha, out, err);
    if (*search) return cmd_search(sa, out, err);
    return cmd_verify(va, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const CapacityExceeded& e) {
    err << "capacity error: " << e.what() << '\n';
  } catch (const FormatError& e) {
    err << "format error at byte " << e.offset() << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kError;
}

}  // namespace cyclecert::cli
