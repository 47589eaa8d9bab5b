#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bvdeform/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact BV master-equation and algebroid checks for AKSZ-type sigma models"};
  app.require_subcommand(1, 1);

  std::string model_path;
  bvdeform::CommandOptions opt;
  std::string against = "paper";
  std::string format = "json";

  for (const auto& name : bvdeform::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--model", model_path, "Model file")->required();
    sub->add_option("--seed", opt.seed, "Seed for randomized trials")->default_val(0);
    sub->add_option("--trials", opt.trials, "Number of random trials")->default_val(200);
    sub->add_option("--against", against, "paper or an identity report path")->default_val("paper");
    sub->add_option("--format", format, "json or text")->default_val("json")->check(CLI::IsMember({"json", "text"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  opt.against = against;
  opt.format = format;
  const std::string command = app.get_subcommands().front()->get_name();
  const bvdeform::CommandOutcome out = bvdeform::run_command_on_file(command, model_path, opt);
  (out.exit_code == 2 ? std::cerr : std::cout) << out.output;
  return out.exit_code;
}
