#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclecert/cycle_colorer.hpp"
#include "cyclecert/graph.hpp"
#include "cyclecert/hom.hpp"

namespace cyclecert::cli {

enum ExitCode { kSuccess = 0, kCertificate = 1, kError = 2 };

// Entry point shared by the tool and the tests; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json color_json(int k, const ColorOutcome& outcome);
nlohmann::json color_error_json(int k, const std::string& message, const VertexSubset* evidence = nullptr);

struct HomAnswer {
  bool feasible = false;
  HomMapping mapping;
  VertexSubset obstruction;
  std::string method;  // "dp" or "search"
  bool cross_checked = false;
};

HomAnswer solve_hom(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists, bool cross_check);
nlohmann::json hom_json(const HomAnswer& a);

// Certificate checks; `why` receives the reason for rejection.
bool verify_color_certificate(const Graph& g, const nlohmann::json& result, std::string* why = nullptr);
bool verify_hom_certificate(const Graph& g, const TargetGraph& h, const std::optional<ListAssignment>& lists,
                            const nlohmann::json& result, std::string* why = nullptr);

}  // namespace cyclecert::cli
