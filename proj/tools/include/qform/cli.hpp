#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qform/arith.hpp"
#include "qform/verify.hpp"

namespace qform::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,
  kUsage = 2,
  kCorpus = 3,
  kOverflow = 4,
};

struct CliConfig {
  std::string command;
  std::string form;
  std::string form2;
  std::optional<std::string> check_isometric;
  Int n = 0;
  Int p = 0;
  std::optional<Int> bound;
  bool primitive = false;
  bool stats = false;
  std::string suite;
  std::optional<std::pair<Int, Int>> window;
  ReportFormat format = ReportFormat::Json;
  unsigned workers = 1;
  std::optional<std::string> corpus_path;
  bool timing = true;
};

/// Parses argv-style arguments (without the program name). Throws ParseError
/// on usage problems; `--help` output goes to `out` and yields nothing.
std::optional<CliConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + corpus resolution (flag, then QFORM_CORPUS) + run, mapping
/// errors to exit codes.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qform::cli
