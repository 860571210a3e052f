// Command-line surface: diagram ingestion, chamber/presentation/verification
// commands, report and graphics emission. Commands are exposed as functions
// so the test suite can drive them in-process.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "titscone/arrangement.hpp"

namespace titscone {

// Exit codes shared by all commands.
//   0 success; 1 verification failure; 2 validation failure;
//   3 radius required but omitted; 4 Artin-side command on non-finite type;
//   5 svg on an arrangement whose dimension is not 2.
enum ExitCode {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitValidation = 2,
  kExitRadiusRequired = 3,
  kExitNotFiniteType = 4,
  kExitDimension = 5,
};

struct RunConfig {
  std::string diagram_json;        // contents of the --diagram file
  std::string j_nodes;             // comma-separated node names
  std::optional<unsigned> radius;
  std::string format = "json";     // json | dot | svg | gap
  std::string suite = "all";       // all | arrangement | groupoid | garside
  unsigned seed = 20250801;
  unsigned threads = 0;            // 0 = from TITSCONE_THREADS, default 1
};

int cmd_chambers(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_presentation(const RunConfig& config, const std::string& target, std::ostream& out,
                     std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_svg(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full argv interface used by the binary.
int run_cli(int argc, const char* const* argv);

}  // namespace titscone
