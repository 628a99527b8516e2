#include "jamfield.h"

#include <cstring>
#include <string>

#include "vendor_json.hpp"

#include "jamfield/errors.hpp"
#include "jamfield/field.hpp"
#include "jamfield/runner.hpp"
#include "jamfield/scenario_json.hpp"
#include "jamfield/util.hpp"

struct jf_scenario {
  jamfield::Scenario value;
};
struct jf_power_map {
  jamfield::PowerMap value;
};
struct jf_profile {
  jamfield::AngularProfile value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
jf_status guarded(Fn&& fn) {
  try {
    fn();
    return JF_OK;
  } catch (const jamfield::SchemaError& e) {
    g_last_error = e.what();
    return JF_ERR_SCHEMA;
  } catch (const jamfield::DomainError& e) {
    g_last_error = e.what();
    return JF_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JF_ERR_DOMAIN;
  }
}

jamfield::RunOptions to_options(const jf_run_options* opts) {
  jamfield::RunOptions o;
  if (opts) {
    if (opts->out_dir) o.out_dir = opts->out_dir;
    if (opts->has_seed) o.seed_override = opts->seed;
    o.threads = opts->threads;
  }
  return o;
}

}  // namespace

extern "C" {

const char* jf_version(void) { return jamfield::kVersion; }

const char* jf_last_error(void) { return g_last_error.c_str(); }

void jf_string_free(char* s) { delete[] s; }

jf_status jf_scenario_parse(const char* json_text, jf_scenario** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *out = new jf_scenario{jamfield::scenario_from_json(json_text)};
  });
}

jf_status jf_scenario_load(const char* path, jf_scenario** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *out = new jf_scenario{jamfield::scenario_from_file(path)};
  });
}

void jf_scenario_free(jf_scenario* s) { delete s; }

jf_status jf_scenario_validate(const jf_scenario* s, char** violations_json) {
  if (!s || !violations_json) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : jamfield::validate_scenario(s->value)) arr.push_back(v);
    *violations_json = dup_string(arr.dump() + "\n");
  });
}

jf_status jf_power_map_compute(const jf_scenario* s, const jf_grid_spec* grid,
                               int threads, jf_power_map** out) {
  if (!s || !out) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    jamfield::GridSpec g;
    if (grid) {
      g.origin_x = grid->origin_x;
      g.origin_y = grid->origin_y;
      g.dx = grid->dx;
      g.dy = grid->dy;
      g.nx = grid->nx;
      g.ny = grid->ny;
      g.z = grid->z;
    }
    jamfield::ComputeOptions copts;
    copts.threads = threads;
    *out = new jf_power_map{jamfield::power_map(s->value, g, copts)};
  });
}

jf_status jf_power_map_dims(const jf_power_map* m, int* nx, int* ny) {
  if (!m || !nx || !ny) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  *nx = m->value.nx;
  *ny = m->value.ny;
  return JF_OK;
}

const double* jf_power_map_values(const jf_power_map* m) {
  return m ? m->value.values_db.data() : nullptr;
}

jf_status jf_power_map_csv(const jf_power_map* m, char** csv) {
  if (!m || !csv) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] { *csv = dup_string(jamfield::power_map_to_csv(m->value)); });
}

jf_status jf_power_map_pgm(const jf_power_map* m, char** pgm) {
  if (!m || !pgm) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] { *pgm = dup_string(jamfield::power_map_to_pgm(m->value)); });
}

void jf_power_map_free(jf_power_map* m) { delete m; }

jf_status jf_angular_sweep(const jf_scenario* s, double radius_m, double step_deg,
                           jf_profile** out) {
  if (!s || !out) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *out = new jf_profile{jamfield::angular_sweep(s->value, radius_m, step_deg)};
  });
}

jf_status jf_profile_size(const jf_profile* p, size_t* n) {
  if (!p || !n) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  *n = p->value.angles_deg.size();
  return JF_OK;
}

const double* jf_profile_angles(const jf_profile* p) {
  return p ? p->value.angles_deg.data() : nullptr;
}

const double* jf_profile_values(const jf_profile* p) {
  return p ? p->value.values_db.data() : nullptr;
}

jf_status jf_profile_csv(const jf_profile* p, char** csv) {
  if (!p || !csv) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] { *csv = dup_string(jamfield::profile_to_csv(p->value)); });
}

void jf_profile_free(jf_profile* p) { delete p; }

jf_status jf_spl_at(const jf_scenario* s, double x, double y, double z,
                    double* spl_db) {
  if (!s || !spl_db) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] { *spl_db = jamfield::spl_at(s->value, {x, y, z}); });
}

jf_status jf_run_config_file(const char* path, const jf_run_options* opts,
                             char** manifest_path) {
  if (!path) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    const auto result = jamfield::run_config_file(path, to_options(opts));
    if (manifest_path) *manifest_path = dup_string(result.manifest_path);
  });
}

jf_status jf_run_recipe(const char* recipe_id, const jf_run_options* opts,
                        char** manifest_path) {
  if (!recipe_id) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] {
    const auto result = jamfield::run_recipe(recipe_id, to_options(opts));
    if (manifest_path) *manifest_path = dup_string(result.manifest_path);
  });
}

jf_status jf_recipes_json(char** json_text) {
  if (!json_text) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] { *json_text = dup_string(jamfield::recipes_json()); });
}

jf_status jf_recipes_table(char** text) {
  if (!text) {
    g_last_error = "null argument";
    return JF_ERR_INVALID_ARG;
  }
  return guarded([&] { *text = dup_string(jamfield::recipes_table()); });
}

}  // extern "C"
