#pragma once

// End-to-end analysis of an input document and its renderings.

#include <optional>
#include <string>
#include <vector>

#include "tensegrity/chow.hpp"
#include "tensegrity/fanbuild.hpp"
#include "tensegrity/framework.hpp"
#include "tensegrity/io.hpp"
#include "tensegrity/multiframe.hpp"

namespace tensegrity {

enum class Route { A, B, Both };

struct AnalyzeOptions {
  Route route = Route::Both;
  TriangulationOrder order = TriangulationOrder::Lex;
  bool tables = false;
};

struct ToricResult {
  Fan fan;
  StressSpaceResult space;
  IntersectionTable table;
  CompletenessResult completeness;
};

struct MultiframeResult {
  std::size_t local_fans = 0;
  std::size_t assistant_rays = 0;
  std::optional<StressBasis> glued;  // unset when the input is out of scope
  bool balanced = false;
  bool mismatch = false;
};

struct AnalysisReport {
  bool planar = true;
  ValidationReport validation;
  std::optional<StressBasis> route_a;
  std::optional<ToricResult> route_b;
  std::optional<MultiframeResult> multiframe;
  bool tables = false;
  std::vector<std::string> notes;

  /// Set only when both routes ran.
  std::optional<bool> routes_agree() const;
  /// 0 ok, 1 the routes disagree, 3 validation failure.
  int exit_code() const;
};

/// Throws Error(ParseError) for option combinations that do not apply to the
/// input, e.g. the toric route on a general framework.
AnalysisReport analyze(const InputDocument& doc, const AnalyzeOptions& options = {});

Json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

Json to_json(const ValidationReport& report);
Json to_json(const StressBasis& basis);
Json fan_json(const Fan& fan);

Json tables_json(const Fan& fan, const IntersectionTable& table);
std::string tables_tsv(const Fan& fan, const IntersectionTable& table);
std::string tables_markdown(const Fan& fan, const IntersectionTable& table);

}  // namespace tensegrity
