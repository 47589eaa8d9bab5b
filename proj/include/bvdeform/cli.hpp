#pragma once

// Command dispatch and report emission for the bvdeform tool.

#include <cstdint>
#include <string>
#include <vector>

#include "bvdeform/dsl.hpp"
#include "bvdeform/master.hpp"

namespace bvdeform {

struct CommandOptions {
  std::uint64_t seed = 0;
  int trials = 200;
  std::string against = "paper";  // "paper" or a path to an identity report
  std::string format = "json";    // "json" or "text"
};

struct CommandOutcome {
  int exit_code = 0;  // 0 pass, 1 mathematical failure, 2 usage or parse error
  std::string output;
};

/// The ten command names in a fixed order.
const std::vector<std::string>& command_names();

/// Runs one command on a parsed model. Usage errors yield exit code 2 with a message.
CommandOutcome run_command(const std::string& command, const ModelFile& model, const CommandOptions& opt);

/// Reads and parses the model file, then runs the command.
CommandOutcome run_command_on_file(const std::string& command, const std::string& model_path,
                                   const CommandOptions& opt);

/// Loads an identity report written by extract-identities, resolving symbols against the model.
IdentitySet load_identity_report(const std::string& path, const ModelSpec& spec);

}  // namespace bvdeform
