#ifndef VDP_CAPI_H
#define VDP_CAPI_H

/* C interface to the Van der Pol terminal-manifold control toolkit. All entry
 * points return a status code; details of the last failure on the calling
 * thread are available via vdp_last_error(). */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vdp_status {
    VDP_OK = 0,
    VDP_CONFIG_ERROR = 2,
    VDP_RUNTIME_ERROR = 3,
    VDP_VERIFY_FAILURE = 4
} vdp_status;

typedef struct vdp_scenario vdp_scenario;

const char* vdp_version(void);

/* Message of the most recent failure on this thread; "" when none. The
 * pointer stays valid until the next API call on the same thread. */
const char* vdp_last_error(void);

vdp_status vdp_scenario_create_from_file(const char* path, vdp_scenario** out);
vdp_status vdp_scenario_create_from_json(const char* json_text, vdp_scenario** out);
void vdp_scenario_destroy(vdp_scenario* sc);

/* Resolved configuration as JSON; release with vdp_string_free. */
vdp_status vdp_scenario_config_json(const vdp_scenario* sc, char** json_out);

/* Runs every trajectory of the scenario into out_dir (CSV, metrics, SVG).
 * When metrics_json_out is non-null it receives the metrics document;
 * release with vdp_string_free. */
vdp_status vdp_scenario_run(const vdp_scenario* sc, const char* out_dir, char** metrics_json_out);

/* Cross-product parameter sweep, e.g. grid_spec "mu=0.05,0.1;b1=1.0,1.5".
 * When table_csv_out is non-null it receives the summary table. */
vdp_status vdp_scenario_sweep(const vdp_scenario* sc, const char* grid_spec, const char* out_dir,
                              char** table_csv_out);

/* Re-renders the SVG portraits of an existing run directory. */
vdp_status vdp_render_run_dir(const char* run_dir);

/* Property-check suite; report_out (optional) receives the text report.
 * Returns VDP_VERIFY_FAILURE when any check fails. */
vdp_status vdp_verify(char** report_out);

void vdp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* VDP_CAPI_H */
