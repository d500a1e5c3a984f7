#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "tensegrity/report.hpp"

using namespace tensegrity;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kInvalid = 3;

struct Args {
  std::string input;
  std::string route = "both";
  std::string format = "json";
  std::string order = "lex";
  bool table = false;
};

TriangulationOrder order_of(const std::string& s) {
  return s == "revlex" ? TriangulationOrder::RevLex : TriangulationOrder::Lex;
}

const PlanarFramework& planar_only(const InputDocument& doc, const char* command) {
  if (!doc.planar()) throw Error(ErrorCode::ParseError, std::string(command) + " needs a planar framework");
  return doc.as_planar();
}

int run_analyze(const Args& a) {
  InputDocument doc = load_document(a.input);
  AnalyzeOptions opt;
  opt.route = a.route == "a" ? Route::A : a.route == "b" ? Route::B : Route::Both;
  opt.order = order_of(a.order);
  opt.tables = a.table;
  AnalysisReport r = analyze(doc, opt);
  if (a.format == "text")
    std::cout << to_text(r);
  else
    std::cout << to_json(r).dump(2) << "\n";
  return r.exit_code();
}

int run_fan(const Args& a) {
  InputDocument doc = load_document(a.input);
  const auto& fw = planar_only(doc, "fan");
  ValidationReport v = validate_planar(fw);
  if (!v.valid()) {
    std::cout << Json{{"valid", false}, {"issues", to_json(v)}}.dump(2) << "\n";
    return kInvalid;
  }
  Fan fan = build_fan(fw, order_of(a.order));
  std::cout << fan_json(fan).dump(2) << "\n";
  return kOk;
}

int run_table(const Args& a) {
  InputDocument doc = load_document(a.input);
  const auto& fw = planar_only(doc, "table");
  ValidationReport v = validate_planar(fw);
  if (!v.valid()) {
    std::cout << Json{{"valid", false}, {"issues", to_json(v)}}.dump(2) << "\n";
    return kInvalid;
  }
  Fan fan = build_fan(fw, order_of(a.order));
  IntersectionTable t = intersection_table(fan);
  if (a.format == "md")
    std::cout << tables_markdown(fan, t);
  else if (a.format == "json")
    std::cout << tables_json(fan, t).dump(2) << "\n";
  else
    std::cout << tables_tsv(fan, t);
  return kOk;
}

int run_check(const Args& a) {
  InputDocument doc = load_document(a.input);
  ValidationReport v = doc.planar() ? validate_planar(doc.as_planar()) : validate_general(doc.as_general());
  if (a.format == "text") {
    std::cout << (v.valid() ? "valid" : "invalid") << "\n";
    for (const auto& i : v.issues)
      std::cout << (i.severity == Severity::Error ? "error " : "warning ") << to_string(i.kind) << " at "
                << i.location << ": " << i.message << "\n";
  } else {
    std::cout << Json{{"valid", v.valid()}, {"issues", to_json(v)}}.dump(2) << "\n";
  }
  return v.valid() ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-stresses of rational frameworks, directly and through toric intersection theory"};
  app.require_subcommand(1);
  Args args;

  auto* analyze_cmd = app.add_subcommand("analyze", "Compute the self-stress space");
  analyze_cmd->add_option("input", args.input, "Input JSON file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--route", args.route, "a, b or both")->check(CLI::IsMember({"a", "b", "both"}));
  analyze_cmd->add_option("--format", args.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_flag("--table", args.table, "Include multiplicity and intersection tables");
  analyze_cmd->add_option("--triangulation-order", args.order, "lex or revlex")
      ->check(CLI::IsMember({"lex", "revlex"}));

  auto* fan_cmd = app.add_subcommand("fan", "Print the fan of a planar framework");
  fan_cmd->add_option("input", args.input, "Input JSON file")->required()->check(CLI::ExistingFile);
  fan_cmd->add_option("--triangulation-order", args.order, "lex or revlex")->check(CLI::IsMember({"lex", "revlex"}));

  auto* table_cmd = app.add_subcommand("table", "Print multiplicities and intersection numbers");
  table_cmd->add_option("input", args.input, "Input JSON file")->required()->check(CLI::ExistingFile);
  table_cmd->add_option("--format", args.format, "tsv, md or json")->check(CLI::IsMember({"tsv", "md", "json"}));
  table_cmd->add_option("--triangulation-order", args.order, "lex or revlex")
      ->check(CLI::IsMember({"lex", "revlex"}));

  auto* check_cmd = app.add_subcommand("check", "Validate an input file");
  check_cmd->add_option("input", args.input, "Input JSON file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--format", args.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (table_cmd->parsed() && !table_cmd->count("--format")) args.format = "tsv";

  try {
    if (analyze_cmd->parsed()) return run_analyze(args);
    if (fan_cmd->parsed()) return run_fan(args);
    if (table_cmd->parsed()) return run_table(args);
    return run_check(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? kUsage : 1;
  }
}
