#include "cli/cli.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "dictlearn/errors.hpp"

namespace dictlearn::cli {

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ParseError*>(&error)) return kParseFailure;
  if (dynamic_cast<const InvalidArgumentError*>(&error)) return kParseFailure;
  if (dynamic_cast<const InsufficientDataError*>(&error)) return kInsufficientData;
  if (dynamic_cast<const ShapeError*>(&error) || dynamic_cast<const FormatError*>(&error) ||
      dynamic_cast<const CoverageError*>(&error) ||
      dynamic_cast<const InvalidRankError*>(&error) ||
      dynamic_cast<const InvalidAggregateError*>(&error) ||
      dynamic_cast<const DegenerateDictionaryError*>(&error))
    return kMismatch;
  return kFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dictionary learning by offline and online nonnegative matrix factorization"};
  app.name(args.empty() ? "dictlearn" : args.front());
  app.require_subcommand(1);

  Context ctx{out, err};
  add_timeseries_commands(app, ctx);
  add_image_commands(app, ctx);
  add_video_commands(app, ctx);
  add_utility_commands(app, ctx);

  std::vector<char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kSuccess;
}

}  // namespace dictlearn::cli
