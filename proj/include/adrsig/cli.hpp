#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adrsig::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kInternalError = 2;

// `args` excludes the program and subcommand names.
int run_detect(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_synth(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Dispatches on args[0] ("detect" or "synth").
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adrsig::cli
