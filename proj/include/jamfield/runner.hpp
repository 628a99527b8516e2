#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jamfield/scenario.hpp"

namespace jamfield {

struct RunOptions {
  std::string out_dir = ".";
  std::optional<uint64_t> seed_override;
  int threads = 0;  // 0 -> JAMFIELD_THREADS / hardware default
};

struct RunResult {
  std::vector<std::string> artifact_paths;  // relative to out_dir
  std::string manifest_path;
};

struct RecipeInfo {
  std::string id;
  std::string description;
  std::vector<std::string> artifacts;
};

// Stable, fixed ordering.
const std::vector<RecipeInfo>& list_recipes();
std::string recipes_table();
std::string recipes_json();

// Expanded JSON run config for a recipe (the form run_config_text consumes).
std::string expand_recipe(const std::string& recipe_id, uint64_t seed);

// Parse, simulate, and write all artifacts plus a manifest. Outputs are
// staged in memory and written atomically, so a failed run leaves no partial
// artifact. SchemaError for malformed configs, DomainError for simulation
// failures.
RunResult run_config_text(const std::string& config_json, const RunOptions& opts);
RunResult run_config_file(const std::string& path, const RunOptions& opts);
RunResult run_recipe(const std::string& recipe_id, const RunOptions& opts);

}  // namespace jamfield
