// jamfield command line front end. Talks to the core only through the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "jamfield.h"

namespace {

int status_to_exit(jf_status st) {
  switch (st) {
    case JF_OK: return 0;
    case JF_ERR_SCHEMA: return 2;
    case JF_ERR_DOMAIN: return 3;
    default: return 3;
  }
}

int fail(jf_status st) {
  std::fprintf(stderr, "error: %s\n", jf_last_error());
  return status_to_exit(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jamfield: ultrasonic microphone jammer simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jf_version()));

  // run
  auto* run = app.add_subcommand("run", "Run a JSON config or a named recipe");
  std::string config_path, recipe_id, out_dir = ".";
  uint64_t seed = 0;
  bool has_seed = false;
  int threads = 0;
  run->add_option("config", config_path, "Run config JSON path");
  run->add_option("--recipe", recipe_id, "Recipe id (see 'recipes')");
  run->add_option("--out-dir", out_dir, "Output directory");
  run->add_option("--seed", seed, "Override the config seed")
      ->each([&](const std::string&) { has_seed = true; });
  run->add_option("--threads", threads,
                  "Worker threads (wall time only, never results)");

  // recipes
  auto* recipes = app.add_subcommand("recipes", "List the available recipes");
  bool as_json = false;
  recipes->add_flag("--json", as_json, "Machine-readable output");

  // validate
  auto* validate = app.add_subcommand("validate", "Validate a scenario JSON file");
  std::string scenario_path;
  validate->add_option("scenario", scenario_path, "Scenario JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) {
    if (config_path.empty() == recipe_id.empty()) {
      std::fprintf(stderr, "error: give exactly one of a config path or --recipe\n");
      return 2;
    }
    jf_run_options opts{};
    opts.out_dir = out_dir.c_str();
    opts.has_seed = has_seed ? 1 : 0;
    opts.seed = seed;
    opts.threads = threads;
    char* manifest = nullptr;
    const jf_status st =
        recipe_id.empty() ? jf_run_config_file(config_path.c_str(), &opts, &manifest)
                          : jf_run_recipe(recipe_id.c_str(), &opts, &manifest);
    if (st != JF_OK) return fail(st);
    std::printf("wrote %s\n", manifest);
    jf_string_free(manifest);
    return 0;
  }

  if (recipes->parsed()) {
    char* text = nullptr;
    const jf_status st = as_json ? jf_recipes_json(&text) : jf_recipes_table(&text);
    if (st != JF_OK) return fail(st);
    std::fputs(text, stdout);
    jf_string_free(text);
    return 0;
  }

  if (validate->parsed()) {
    jf_scenario* scenario = nullptr;
    jf_status st = jf_scenario_load(scenario_path.c_str(), &scenario);
    if (st != JF_OK) return fail(st);
    char* violations = nullptr;
    st = jf_scenario_validate(scenario, &violations);
    jf_scenario_free(scenario);
    if (st != JF_OK) return fail(st);
    const std::string v = violations;
    jf_string_free(violations);
    if (v.find('"') == std::string::npos) {
      std::printf("ok\n");
      return 0;
    }
    std::printf("violations: %s", v.c_str());
    return 1;
  }
  return 2;
}
