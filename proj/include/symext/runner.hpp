#ifndef SYMEXT_RUNNER_HPP
#define SYMEXT_RUNNER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "symext/dsl.hpp"
#include "symext/limits.hpp"

namespace symext::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  Limits limits;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool timing = false;  // adds wall-clock fields, which makes reports run-dependent
};

enum ExitCode : int { kAllPass = 0, kAssertionFailed = 1, kDocumentError = 2, kInconclusive = 3 };

/// Executes statements in order against a private set of systems and
/// bindings, collecting one report entry per statement. After an error
/// (an invalid configuration or unknown condition label) the remaining
/// statements are skipped.
class Session {
 public:
  explicit Session(RunConfig config);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  void run(const dsl::Document& doc);

  Json report() const;
  int exit_code() const;

  /// Decides `condition ⊩ formula` in the active system, with the
  /// document's bindings in scope.
  Json force(std::string_view condition, std::string_view formula);

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct RunOutput {
  Json report;
  int exit_code = kAllPass;
};

/// Parses and runs a document. Parse errors produce a report with an
/// "error" object and exit code 2.
RunOutput run_document(std::string_view text, const RunConfig& config);

Json parse_error_report(const dsl::ParseError& error, const RunConfig& config);

/// Tabular rendering of a report.
std::string render_human(const Json& report);

}  // namespace symext::cli

#endif  // SYMEXT_RUNNER_HPP
