#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symext/runner.hpp"

using symext::cli::Json;

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite symmetric-extension workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  symext::cli::RunConfig config;
  app.add_option("--max-group", config.limits.max_group, "Largest automorphism group enumerated")->capture_default_str();
  app.add_option("--max-poset", config.limits.max_poset, "Largest poset built")
      ->envname("SYMEXT_MAX_ELEMENTS")
      ->capture_default_str();
  app.add_option("--rank-cap", config.limits.rank_cap, "Largest name rank")->capture_default_str();
  app.add_option("--seed", config.seed, "Sample seed for suites")->capture_default_str();
  app.add_option("--jobs", config.jobs, "Worker threads for suites")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_flag("--timing", config.timing, "Add wall-clock timings to the report");

  std::string file;
  auto* check = app.add_subcommand("check", "Run a document and summarize failures");
  check->add_option("file", file, "Document")->required();

  std::string format = "json";
  auto* report = app.add_subcommand("report", "Run a document and print the full report");
  report->add_option("file", file, "Document")->required();
  report->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "human"}))->capture_default_str();

  std::string condition, formula;
  auto* force = app.add_subcommand("force", "Decide condition ⊩ formula after running a document");
  force->add_option("file", file, "Document")->required();
  force->add_option("--condition", condition, "Condition label, or top")->required();
  force->add_option("--formula", formula, "Formula over the document's names")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symext::cli::kDocumentError;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "symext: cannot read " << file << "\n";
    return symext::cli::kDocumentError;
  }

  if (*force) {
    symext::dsl::Document doc;
    try {
      doc = symext::dsl::parse_spec(text);
    } catch (const symext::dsl::ParseError& e) {
      std::cerr << file << ":" << e.what() << "\n";
      return symext::cli::kDocumentError;
    }
    symext::cli::Session session(config);
    session.run(doc);
    try {
      const Json result = session.force(condition, formula);
      std::cout << result.dump(2) << "\n";
      return result["forces"].get<bool>() ? 0 : 1;
    } catch (const symext::dsl::ParseError& e) {
      std::cerr << "formula:" << e.what() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "symext: " << e.what() << "\n";
    }
    return symext::cli::kDocumentError;
  }

  const symext::cli::RunOutput out = symext::cli::run_document(text, config);
  if (*report) {
    if (format == "json")
      std::cout << out.report.dump(2) << "\n";
    else
      std::cout << symext::cli::render_human(out.report);
    return out.exit_code;
  }

  if (out.report.contains("error")) {
    const Json& e = out.report["error"];
    std::cerr << file << ":" << e["line"].dump() << ":" << e["column"].dump() << ": "
              << e["message"].get<std::string>() << "\n";
    return out.exit_code;
  }
  for (const Json& s : out.report["statements"]) {
    const std::string outcome = s["outcome"].get<std::string>();
    if (outcome == "pass") continue;
    std::cout << file << ":" << s["line"].dump() << ": " << outcome << ": " << s["statement"].get<std::string>();
    if (s["details"].contains("reason")) std::cout << " (" << s["details"]["reason"].get<std::string>() << ")";
    std::cout << "\n";
  }
  std::cout << symext::cli::render_human(Json{{"statements", Json::array()}, {"summary", out.report["summary"]}});
  return out.exit_code;
}
