#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace dictlearn::cli {

/// Process exit codes. Stable contract.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,           // I/O and other unexpected errors
  kParseFailure = 2,      // malformed input file or invalid flags/parameters
  kInsufficientData = 3,  // too few samples/frames for the requested operation
  kMismatch = 4,          // dimension or format mismatch
};

/// Runs one command. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Maps a library exception to its exit code.
int exit_code_for(const std::exception& error);

/// Output streams shared by the subcommand callbacks.
struct Context {
  std::ostream& out;
  std::ostream& err;
};

void add_timeseries_commands(CLI::App& app, Context& ctx);
void add_image_commands(CLI::App& app, Context& ctx);
void add_video_commands(CLI::App& app, Context& ctx);
void add_utility_commands(CLI::App& app, Context& ctx);

}  // namespace dictlearn::cli
