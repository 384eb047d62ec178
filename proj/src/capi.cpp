#include "vdp/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "vdp/errors.hpp"
#include "vdp/render.hpp"
#include "vdp/scenario.hpp"
#include "vdp/verify.hpp"

struct vdp_scenario {
    vdp::ScenarioConfig cfg;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <typename F>
vdp_status guarded(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const vdp::Error& e) {
        g_last_error = e.what();
        return static_cast<vdp_status>(static_cast<int>(e.status));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VDP_RUNTIME_ERROR;
    } catch (...) {
        g_last_error = "unknown error";
        return VDP_RUNTIME_ERROR;
    }
}

vdp_status null_arg() {
    g_last_error = "null argument";
    return VDP_CONFIG_ERROR;
}

} // namespace

extern "C" {

const char* vdp_version(void) { return "1.0.0"; }

const char* vdp_last_error(void) { return g_last_error.c_str(); }

vdp_status vdp_scenario_create_from_file(const char* path, vdp_scenario** out) {
    if (!path || !out) return null_arg();
    *out = nullptr;
    return guarded([&]() -> vdp_status {
        *out = new vdp_scenario{vdp::load_scenario_file(path)};
        return VDP_OK;
    });
}

vdp_status vdp_scenario_create_from_json(const char* json_text, vdp_scenario** out) {
    if (!json_text || !out) return null_arg();
    *out = nullptr;
    return guarded([&]() -> vdp_status {
        vdp::ojson j;
        try {
            j = vdp::ojson::parse(json_text);
        } catch (const vdp::ojson::parse_error& e) {
            throw vdp::ConfigError({e.what()});
        }
        *out = new vdp_scenario{vdp::parse_scenario(j)};
        return VDP_OK;
    });
}

void vdp_scenario_destroy(vdp_scenario* sc) { delete sc; }

vdp_status vdp_scenario_config_json(const vdp_scenario* sc, char** json_out) {
    if (!sc || !json_out) return null_arg();
    return guarded([&]() -> vdp_status {
        *json_out = dup_string(vdp::resolved_config_json(sc->cfg).dump(2) + "\n");
        return VDP_OK;
    });
}

vdp_status vdp_scenario_run(const vdp_scenario* sc, const char* out_dir, char** metrics_json_out) {
    if (!sc || !out_dir) return null_arg();
    return guarded([&]() -> vdp_status {
        const vdp::ScenarioResult res = vdp::run_scenario(sc->cfg, out_dir);
        if (metrics_json_out) *metrics_json_out = dup_string(res.metrics_json.dump(2) + "\n");
        return VDP_OK;
    });
}

vdp_status vdp_scenario_sweep(const vdp_scenario* sc, const char* grid_spec, const char* out_dir,
                              char** table_csv_out) {
    if (!sc || !grid_spec || !out_dir) return null_arg();
    return guarded([&]() -> vdp_status {
        const std::string table = vdp::run_sweep(sc->cfg, grid_spec, out_dir);
        if (table_csv_out) *table_csv_out = dup_string(table);
        return VDP_OK;
    });
}

vdp_status vdp_render_run_dir(const char* run_dir) {
    if (!run_dir) return null_arg();
    return guarded([&]() -> vdp_status {
        vdp::render_run_dir(run_dir);
        return VDP_OK;
    });
}

vdp_status vdp_verify(char** report_out) {
    return guarded([&]() -> vdp_status {
        const vdp::VerifyReport rep = vdp::run_verification();
        if (report_out) *report_out = dup_string(rep.text());
        if (!rep.all_passed()) {
            g_last_error = "verification failed";
            return VDP_VERIFY_FAILURE;
        }
        return VDP_OK;
    });
}

void vdp_string_free(char* s) { std::free(s); }

} // extern "C"
