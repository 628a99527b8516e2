/* jamfield C API: ultrasonic microphone jammer simulation.
 *
 * All functions return jf_status; JF_OK means success. On failure, a
 * thread-local message is available via jf_last_error(). Handles are opaque
 * and freed with their matching *_free function; strings returned through
 * char** out-parameters are freed with jf_string_free().
 */
#ifndef JAMFIELD_H
#define JAMFIELD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jf_status {
  JF_OK = 0,
  JF_ERR_SCHEMA = 2,  /* malformed config, unknown key, unknown id */
  JF_ERR_DOMAIN = 3,  /* simulation/domain failure */
  JF_ERR_INVALID_ARG = 4
} jf_status;

typedef struct jf_scenario jf_scenario;
typedef struct jf_power_map jf_power_map;
typedef struct jf_profile jf_profile;

typedef struct jf_run_options {
  const char* out_dir;      /* NULL -> "." */
  int has_seed;             /* nonzero: seed overrides the config seed */
  uint64_t seed;
  int threads;              /* 0 -> JAMFIELD_THREADS / hardware default */
} jf_run_options;

typedef struct jf_grid_spec {
  double origin_x, origin_y;
  double dx, dy;
  int nx, ny;
  double z;
} jf_grid_spec;

const char* jf_version(void);
const char* jf_last_error(void);
void jf_string_free(char* s);

/* Scenario lifecycle. */
jf_status jf_scenario_parse(const char* json_text, jf_scenario** out);
jf_status jf_scenario_load(const char* path, jf_scenario** out);
void jf_scenario_free(jf_scenario* s);

/* JSON array of violation strings; empty array means the scenario is valid. */
jf_status jf_scenario_validate(const jf_scenario* s, char** violations_json);

/* Field computations. */
jf_status jf_power_map_compute(const jf_scenario* s, const jf_grid_spec* grid,
                               int threads, jf_power_map** out);
jf_status jf_power_map_dims(const jf_power_map* m, int* nx, int* ny);
/* Row-major nx*ny dB values, NaN for unset cells; pointer valid until free. */
const double* jf_power_map_values(const jf_power_map* m);
jf_status jf_power_map_csv(const jf_power_map* m, char** csv);
jf_status jf_power_map_pgm(const jf_power_map* m, char** pgm);
void jf_power_map_free(jf_power_map* m);

jf_status jf_angular_sweep(const jf_scenario* s, double radius_m, double step_deg,
                           jf_profile** out);
jf_status jf_profile_size(const jf_profile* p, size_t* n);
const double* jf_profile_angles(const jf_profile* p);
const double* jf_profile_values(const jf_profile* p);
jf_status jf_profile_csv(const jf_profile* p, char** csv);
void jf_profile_free(jf_profile* p);

jf_status jf_spl_at(const jf_scenario* s, double x, double y, double z,
                    double* spl_db);

/* Runner. */
jf_status jf_run_config_file(const char* path, const jf_run_options* opts,
                             char** manifest_path);
jf_status jf_run_recipe(const char* recipe_id, const jf_run_options* opts,
                        char** manifest_path);
jf_status jf_recipes_json(char** json_text);
jf_status jf_recipes_table(char** text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* JAMFIELD_H */
