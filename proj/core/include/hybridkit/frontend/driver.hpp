#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace hybridkit::frontend {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInputError = 2 };

struct CheckOptions {
  /// Shown in diagnostics.
  std::string filename = "<input>";
  std::filesystem::path base_dir;
  /// Commands to run instead of the ones in the file.
  std::optional<std::string> commands;
  bool json = false;
  /// Default sentence depth for `verify`.
  int depth = 3;
  bool trace = false;
};

/// Runs the commands of a file. Results go to `out` (one JSON object per
/// line with `json`), diagnostics to `err`. Returns 2 if the input or any
/// command is erroneous, else 1 if any verdict is negative, else 0.
int run_check(const CheckOptions& options, std::string_view text, std::ostream& out, std::ostream& err);

/// Prints the canonical form of a file (only `filename` and `base_dir` of
/// the options are used).
int run_format(const CheckOptions& options, std::string_view text, std::ostream& out, std::ostream& err);

}  // namespace hybridkit::frontend
