#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace catfm::cli;

int main(int argc, char** argv) {
  CLI::App app{"Finite category-theory toolkit for foundation-model constructions"};
  app.require_subcommand(1);

  Options opt;
  std::string format = "json";
  app.add_option("--budget", opt.budget, "enumeration budget for natural-transformation search")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized scenarios")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--tolerance", opt.tolerance, "numeric tolerance for kernel factorization")->capture_default_str();

  std::vector<std::string> paths;
  auto* validate = app.add_subcommand("validate", "validate category, functor, presheaf and builder files");
  validate->add_option("paths", paths, "input files")->required();

  std::string category, task, chain, demo;
  auto* prompt = app.add_subcommand("prompt", "decide whether prompt tuning solves a task");
  prompt->add_option("category", category)->required();
  prompt->add_option("task", task)->required();

  auto* finetune = app.add_subcommand("finetune", "solve a covariant task by extension along the Yoneda embedding");
  finetune->add_option("category", category)->required();
  finetune->add_option("task", task)->required();

  auto* chain_cmd = app.add_subcommand("chain", "verify a chain of feature-aligned full embeddings");
  chain_cmd->add_option("chain", chain)->required();

  auto* demo_cmd = app.add_subcommand("demo", "run a packaged scenario");
  demo_cmd->add_option("name", demo)
      ->required()
      ->check(CLI::IsMember({"rotation", "contrastive", "masked", "lm", "clip-analog"}));

  // flags are accepted before or after the subcommand
  for (auto* sub : {validate, prompt, finetune, chain_cmd, demo_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  Report report;
  if (*validate) report = cmd_validate(paths, opt);
  else if (*prompt) report = cmd_prompt(category, task, opt);
  else if (*finetune) report = cmd_finetune(category, task, opt);
  else if (*chain_cmd) report = cmd_chain(chain, opt);
  else report = cmd_demo(demo, opt);

  if (format == "text") {
    std::cout << render_text(report);
  } else {
    for (const auto& line : report.narration) std::cerr << line << "\n";
    std::cout << report.to_json().dump(2) << "\n";
  }
  return report.exit_code;
}
