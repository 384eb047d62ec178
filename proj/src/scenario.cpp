#include "vdp/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "vdp/csv.hpp"
#include "vdp/render.hpp"

namespace vdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects every violation so a bad config is reported in one shot.
struct Checker {
    std::vector<std::string> violations;

    void fail(const std::string& msg) { violations.push_back(msg); }

    void check_keys(const ojson& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char* k : allowed)
                if (it.key() == k) known = true;
            if (!known) fail(where + ": unknown key '" + it.key() + "'");
        }
    }

    double num(const ojson& obj, const std::string& where, const char* key, double fallback) {
        if (!obj.contains(key)) return fallback;
        const auto& x = obj.at(key);
        if (!x.is_number()) {
            fail(where + "." + key + ": must be a number");
            return fallback;
        }
        return x.get<double>();
    }

    long integer(const ojson& obj, const std::string& where, const char* key, long fallback) {
        if (!obj.contains(key)) return fallback;
        const auto& x = obj.at(key);
        if (!x.is_number_integer()) {
            fail(where + "." + key + ": must be an integer");
            return fallback;
        }
        return x.get<long>();
    }

    bool boolean(const ojson& obj, const std::string& where, const char* key, bool fallback) {
        if (!obj.contains(key)) return fallback;
        const auto& x = obj.at(key);
        if (!x.is_boolean()) {
            fail(where + "." + key + ": must be a boolean");
            return fallback;
        }
        return x.get<bool>();
    }

    // Control bounds admit "inf" / "+inf" / "-inf" alongside plain numbers.
    double bound(const ojson& obj, const std::string& where, const char* key, double fallback) {
        if (!obj.contains(key)) return fallback;
        const auto& x = obj.at(key);
        if (x.is_number()) return x.get<double>();
        if (x.is_string()) {
            const std::string s = x.get<std::string>();
            if (s == "inf" || s == "+inf") return kInf;
            if (s == "-inf") return -kInf;
        }
        fail(where + "." + key + ": must be a number or \"inf\"/\"-inf\"");
        return fallback;
    }

    Interval interval(const ojson& obj, const std::string& where, const char* key,
                      Interval fallback) {
        if (!obj.contains(key)) return fallback;
        const auto& x = obj.at(key);
        if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number()) {
            fail(where + "." + key + ": must be an array of two numbers");
            return fallback;
        }
        Interval iv{x[0].get<double>(), x[1].get<double>()};
        if (iv.lo > iv.hi) fail(where + "." + key + ": lower bound exceeds upper bound");
        return iv;
    }

    void done() {
        if (!violations.empty()) throw ConfigError(violations);
    }
};

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Status::runtime_error, "cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error(Status::runtime_error, "failed to write " + path);
}

} // namespace

ScenarioConfig parse_scenario(const ojson& j) {
    Checker c;
    ScenarioConfig cfg;
    if (!j.is_object()) {
        c.fail("top level: must be an object");
        c.done();
    }
    c.check_keys(j, "top level",
                 {"name", "initial_states", "gains", "schedule", "bounds", "integrator",
                  "adaptation", "admissible", "convergence_tol", "seed"});

    if (j.contains("name")) {
        if (j.at("name").is_string())
            cfg.name = j.at("name").get<std::string>();
        else
            c.fail("name: must be a string");
    }

    if (j.contains("admissible")) {
        const auto& o = j.at("admissible");
        if (o.is_object()) {
            c.check_keys(o, "admissible", {"a1", "a2", "b0", "b1", "mu"});
            auto& s = cfg.admissible;
            s.a1 = c.interval(o, "admissible", "a1", s.a1);
            s.a2 = c.interval(o, "admissible", "a2", s.a2);
            s.b0 = c.interval(o, "admissible", "b0", s.b0);
            s.b1 = c.interval(o, "admissible", "b1", s.b1);
            s.mu = c.interval(o, "admissible", "mu", s.mu);
        } else {
            c.fail("admissible: must be an object");
        }
    }

    if (j.contains("initial_states")) {
        const auto& arr = j.at("initial_states");
        if (!arr.is_array() || arr.empty()) {
            c.fail("initial_states: must be a non-empty array");
        } else {
            cfg.initial_states.clear();
            for (size_t k = 0; k < arr.size(); ++k) {
                const std::string where = "initial_states[" + std::to_string(k) + "]";
                const auto& e = arr[k];
                if (!e.is_object()) {
                    c.fail(where + ": must be an object");
                    continue;
                }
                c.check_keys(e, where, {"r", "theta"});
                if (!e.contains("r")) c.fail(where + ": missing 'r'");
                cfg.initial_states.push_back(
                    {c.num(e, where, "r", 1.0), c.num(e, where, "theta", 0.0)});
            }
        }
    }

    if (j.contains("gains")) {
        const auto& o = j.at("gains");
        if (o.is_object()) {
            c.check_keys(o, "gains", {"a1", "a2"});
            cfg.gains.a1 = c.num(o, "gains", "a1", cfg.gains.a1);
            cfg.gains.a2 = c.num(o, "gains", "a2", cfg.gains.a2);
        } else {
            c.fail("gains: must be an object");
        }
    }

    if (j.contains("schedule")) {
        const auto& arr = j.at("schedule");
        if (!arr.is_array() || arr.empty()) {
            c.fail("schedule: must be a non-empty array");
        } else {
            cfg.schedule.segments.clear();
            for (size_t k = 0; k < arr.size(); ++k) {
                const std::string where = "schedule[" + std::to_string(k) + "]";
                const auto& e = arr[k];
                if (!e.is_object()) {
                    c.fail(where + ": must be an object");
                    continue;
                }
                c.check_keys(e, where, {"t_start", "b0", "b1", "mu"});
                ScheduleSegment seg;
                seg.t_start = c.num(e, where, "t_start", 0.0);
                seg.b.b0 = c.num(e, where, "b0", 4.0);
                seg.b.b1 = c.num(e, where, "b1", 1.5);
                seg.mu = c.num(e, where, "mu", 0.1);
                cfg.schedule.segments.push_back(seg);
            }
        }
    }

    if (j.contains("bounds")) {
        const auto& o = j.at("bounds");
        if (o.is_object()) {
            c.check_keys(o, "bounds", {"u_min", "u_max"});
            cfg.bounds.u_min = c.bound(o, "bounds", "u_min", cfg.bounds.u_min);
            cfg.bounds.u_max = c.bound(o, "bounds", "u_max", cfg.bounds.u_max);
        } else {
            c.fail("bounds: must be an object");
        }
    }

    if (j.contains("integrator")) {
        const auto& o = j.at("integrator");
        if (o.is_object()) {
            c.check_keys(o, "integrator", {"h", "t_end", "sample_every", "error_monitor", "r_guard"});
            auto& ic = cfg.integrator;
            ic.h = c.num(o, "integrator", "h", ic.h);
            ic.t_end = c.num(o, "integrator", "t_end", ic.t_end);
            ic.sample_every = static_cast<int>(
                c.integer(o, "integrator", "sample_every", ic.sample_every));
            ic.error_monitor = c.boolean(o, "integrator", "error_monitor", ic.error_monitor);
            ic.r_guard = c.num(o, "integrator", "r_guard", ic.r_guard);
        } else {
            c.fail("integrator: must be an object");
        }
    }

    if (j.contains("adaptation")) {
        const auto& o = j.at("adaptation");
        if (o.is_object()) {
            c.check_keys(o, "adaptation",
                         {"enabled", "epoch_period", "id_window", "v_max", "grid_n", "sigma",
                          "phi_min"});
            auto& ac = cfg.adaptation;
            ac.enabled = c.boolean(o, "adaptation", "enabled", ac.enabled);
            ac.epoch_period = c.num(o, "adaptation", "epoch_period", ac.epoch_period);
            ac.id_window = static_cast<int>(c.integer(o, "adaptation", "id_window", ac.id_window));
            ac.v_max = c.num(o, "adaptation", "v_max", ac.v_max);
            ac.grid_n = static_cast<int>(c.integer(o, "adaptation", "grid_n", ac.grid_n));
            ac.sigma = c.num(o, "adaptation", "sigma", ac.sigma);
            ac.phi_min = c.num(o, "adaptation", "phi_min", ac.phi_min);
        } else {
            c.fail("adaptation: must be an object");
        }
    }

    cfg.convergence_tol = c.num(j, "top level", "convergence_tol", cfg.convergence_tol);
    if (j.contains("seed")) {
        const auto& x = j.at("seed");
        if (x.is_number_unsigned())
            cfg.seed = x.get<std::uint64_t>();
        else
            c.fail("seed: must be a nonnegative integer");
    }

    // Value-level checks on the resolved configuration.
    const auto& ic = cfg.integrator;
    if (!(ic.h > 0.0)) c.fail("integrator.h: must be positive");
    if (!(ic.t_end > 0.0)) c.fail("integrator.t_end: must be positive");
    if (ic.sample_every < 1) c.fail("integrator.sample_every: must be at least 1");
    if (!(ic.r_guard > 0.0)) c.fail("integrator.r_guard: must be positive");
    if (!(cfg.bounds.u_min < cfg.bounds.u_max)) c.fail("bounds: u_min must be below u_max");
    if (!(cfg.convergence_tol > 0.0)) c.fail("convergence_tol: must be positive");

    const auto& adm = cfg.admissible;
    if (adm.a1.lo < 0.0) c.fail("admissible.a1: lower bound must be nonnegative");
    if (!(adm.a2.lo > 0.0)) c.fail("admissible.a2: lower bound must be positive");
    if (adm.mu.lo < 0.0) c.fail("admissible.mu: lower bound must be nonnegative");

    if (!adm.a1.contains(cfg.gains.a1))
        c.fail("gains.a1: outside admissible [" + fmt17(adm.a1.lo) + ", " + fmt17(adm.a1.hi) + "]");
    if (!adm.a2.contains(cfg.gains.a2))
        c.fail("gains.a2: outside admissible [" + fmt17(adm.a2.lo) + ", " + fmt17(adm.a2.hi) + "]");

    for (size_t k = 0; k < cfg.schedule.segments.size(); ++k) {
        const std::string where = "schedule[" + std::to_string(k) + "]";
        const auto& seg = cfg.schedule.segments[k];
        if (k == 0 && seg.t_start != 0.0) c.fail(where + ".t_start: first segment must start at 0");
        if (k > 0 && !(seg.t_start > cfg.schedule.segments[k - 1].t_start))
            c.fail(where + ".t_start: must be strictly increasing");
        if (!(seg.t_start < ic.t_end)) c.fail(where + ".t_start: must be below integrator.t_end");
        if (!adm.b0.contains(seg.b.b0))
            c.fail(where + ".b0: outside admissible [" + fmt17(adm.b0.lo) + ", " +
                   fmt17(adm.b0.hi) + "]");
        if (!adm.b1.contains(seg.b.b1))
            c.fail(where + ".b1: outside admissible [" + fmt17(adm.b1.lo) + ", " +
                   fmt17(adm.b1.hi) + "]");
        if (!adm.mu.contains(seg.mu))
            c.fail(where + ".mu: outside admissible [" + fmt17(adm.mu.lo) + ", " +
                   fmt17(adm.mu.hi) + "]");
        if (!(seg.b.b0 - std::abs(seg.b.b1) > ic.r_guard))
            c.fail(where + ": manifold comes within the guard radius of the origin");
    }

    for (size_t k = 0; k < cfg.initial_states.size(); ++k) {
        const std::string where = "initial_states[" + std::to_string(k) + "]";
        const auto& s = cfg.initial_states[k];
        if (!(s.r > ic.r_guard)) c.fail(where + ".r: must exceed integrator.r_guard");
        if (!std::isfinite(s.theta)) c.fail(where + ".theta: must be finite");
    }

    const auto& ac = cfg.adaptation;
    if (!(ac.epoch_period > 0.0)) c.fail("adaptation.epoch_period: must be positive");
    if (ac.id_window < 3) c.fail("adaptation.id_window: must be at least 3");
    if (ac.v_max < 0.0) c.fail("adaptation.v_max: must be nonnegative");
    if (ac.grid_n < 64) c.fail("adaptation.grid_n: must be at least 64");
    if (ac.sigma < 0.0) c.fail("adaptation.sigma: must be nonnegative");
    if (!(ac.phi_min > 0.0)) c.fail("adaptation.phi_min: must be positive");

    c.done();
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot open config file " + path});
    ojson j;
    try {
        j = ojson::parse(in);
    } catch (const ojson::parse_error& e) {
        throw ConfigError({path + ": " + e.what()});
    }
    return parse_scenario(j);
}

ojson resolved_config_json(const ScenarioConfig& cfg) {
    ojson j;
    j["name"] = cfg.name;
    j["initial_states"] = ojson::array();
    for (const auto& s : cfg.initial_states)
        j["initial_states"].push_back({{"r", s.r}, {"theta", s.theta}});
    j["gains"] = {{"a1", cfg.gains.a1}, {"a2", cfg.gains.a2}};
    j["schedule"] = ojson::array();
    for (const auto& seg : cfg.schedule.segments)
        j["schedule"].push_back(
            {{"t_start", seg.t_start}, {"b0", seg.b.b0}, {"b1", seg.b.b1}, {"mu", seg.mu}});
    auto bound_json = [](double x) -> ojson {
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        return x;
    };
    j["bounds"] = {{"u_min", bound_json(cfg.bounds.u_min)},
                   {"u_max", bound_json(cfg.bounds.u_max)}};
    j["integrator"] = {{"h", cfg.integrator.h},
                       {"t_end", cfg.integrator.t_end},
                       {"sample_every", cfg.integrator.sample_every},
                       {"error_monitor", cfg.integrator.error_monitor},
                       {"r_guard", cfg.integrator.r_guard}};
    j["adaptation"] = {{"enabled", cfg.adaptation.enabled},
                       {"epoch_period", cfg.adaptation.epoch_period},
                       {"id_window", cfg.adaptation.id_window},
                       {"v_max", cfg.adaptation.v_max},
                       {"grid_n", cfg.adaptation.grid_n},
                       {"sigma", cfg.adaptation.sigma},
                       {"phi_min", cfg.adaptation.phi_min}};
    j["admissible"] = {{"a1", {cfg.admissible.a1.lo, cfg.admissible.a1.hi}},
                       {"a2", {cfg.admissible.a2.lo, cfg.admissible.a2.hi}},
                       {"b0", {cfg.admissible.b0.lo, cfg.admissible.b0.hi}},
                       {"b1", {cfg.admissible.b1.lo, cfg.admissible.b1.hi}},
                       {"mu", {cfg.admissible.mu.lo, cfg.admissible.mu.hi}}};
    j["convergence_tol"] = cfg.convergence_tol;
    j["seed"] = cfg.seed;
    return j;
}

TrajectoryMetrics compute_metrics(const ScenarioConfig& cfg, const Trajectory& traj, int index,
                                  const std::vector<EpochRecord>& epochs) {
    TrajectoryMetrics m;
    m.index = index;
    m.n_samples = traj.samples.size();
    m.monitor_violations = traj.monitor_violations;
    m.epochs = epochs;
    if (traj.aborted) {
        m.status = "aborted";
        m.abort_time = traj.abort_time;
        m.abort_reason = traj.abort_reason;
    }
    if (traj.samples.empty()) {
        if (index >= 0 && static_cast<size_t>(index) < cfg.initial_states.size()) {
            m.r0 = cfg.initial_states[index].r;
            m.theta0 = cfg.initial_states[index].theta;
        }
        return m;
    }
    const auto& ss = traj.samples;
    m.r0 = ss.front().r;
    m.theta0 = ss.front().theta;
    m.final_time = ss.back().t;
    m.final_offset = std::abs(ss.back().v);
    bool prev_clamped = false;
    m.min_dtheta_dt = kInf;
    for (const Sample& s : ss) {
        m.max_abs_u = std::max(m.max_abs_u, std::abs(s.u_applied));
        if (s.clamped && !prev_clamped) ++m.clamp_count;
        prev_clamped = s.clamped;
        m.min_dtheta_dt = std::min(
            m.min_dtheta_dt, vector_field_polar({s.r, s.theta}, s.u_applied, s.mu).dtheta_dt);
    }
    if (!traj.aborted) {
        size_t i = ss.size();
        while (i > 0 && std::abs(ss[i - 1].v) < cfg.convergence_tol) --i;
        if (i == ss.size()) {
            m.status = "not_converged";
        } else {
            m.status = "converged";
            m.has_convergence_time = true;
            m.convergence_time = ss[i].t;
        }
    }
    return m;
}

namespace {

ojson metrics_to_json(const ScenarioConfig& cfg, const std::vector<TrajectoryMetrics>& metrics) {
    ojson j;
    j["name"] = cfg.name;
    j["seed"] = cfg.seed;
    j["convergence_tol"] = cfg.convergence_tol;
    j["trajectories"] = ojson::array();
    for (const auto& m : metrics) {
        ojson t;
        t["index"] = m.index;
        t["r0"] = m.r0;
        t["theta0"] = m.theta0;
        t["status"] = m.status;
        t["convergence_time"] = m.has_convergence_time ? ojson(m.convergence_time) : ojson(nullptr);
        t["final_time"] = m.final_time;
        t["final_offset"] = m.final_offset;
        t["max_abs_u"] = m.max_abs_u;
        t["clamp_count"] = m.clamp_count;
        t["min_dtheta_dt"] = m.min_dtheta_dt;
        t["monitor_violations"] = m.monitor_violations;
        t["samples"] = m.n_samples;
        if (m.status == "aborted") {
            t["abort_time"] = m.abort_time;
            t["abort_reason"] = m.abort_reason;
        }
        t["epochs"] = ojson::array();
        for (const auto& e : m.epochs) {
            ojson je;
            je["t"] = e.t;
            je["status"] = e.status;
            je["a1"] = e.a1;
            if (e.status != "skipped") {
                je["mu_tilde"] = e.mu_tilde;
                je["b0_tilde"] = e.b0_tilde;
                je["b1_tilde"] = e.b1_tilde;
            }
            if (e.status == "updated") {
                je["s"] = e.s;
                je["wc_lo"] = e.wc_lo;
                je["wc_hi"] = e.wc_hi;
                je["fallback_scan"] = e.fallback_scan;
            }
            t["epochs"].push_back(je);
        }
        j["trajectories"].push_back(t);
    }
    return j;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    write_text(out_dir + "/scenario.json", resolved_config_json(cfg).dump(2) + "\n");
    ScenarioResult res;
    for (size_t k = 0; k < cfg.initial_states.size(); ++k) {
        Trajectory traj;
        std::vector<EpochRecord> epochs;
        if (cfg.adaptation.enabled) {
            MiacController miac(cfg.adaptation, cfg.gains, cfg.admissible, cfg.bounds,
                                cfg.schedule, cfg.seed + k);
            traj = integrate_closed_loop(cfg.initial_states[k], cfg.schedule, cfg.gains,
                                         cfg.bounds, cfg.integrator, cfg.adaptation.epoch_period,
                                         miac.callback());
            epochs = miac.log();
        } else {
            traj = integrate_closed_loop(cfg.initial_states[k], cfg.schedule, cfg.gains,
                                         cfg.bounds, cfg.integrator);
        }
        write_trajectory_csv(out_dir + "/trajectory_" + std::to_string(k) + ".csv", traj);
        res.metrics.push_back(compute_metrics(cfg, traj, static_cast<int>(k), epochs));
        res.trajectories.push_back(std::move(traj));
    }
    res.metrics_json = metrics_to_json(cfg, res.metrics);
    write_text(out_dir + "/metrics.json", res.metrics_json.dump(2) + "\n");
    std::vector<std::vector<Sample>> tracks;
    for (const auto& t : res.trajectories) tracks.push_back(t.samples);
    render_svgs(cfg, tracks, out_dir);
    return res;
}

std::vector<SweepAxis> parse_grid_spec(const std::string& spec) {
    std::vector<std::string> errs;
    std::vector<SweepAxis> axes;
    auto trim = [](std::string s) {
        const char* ws = " \t";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    static const char* kAxisNames[] = {"mu", "b0", "b1", "a1", "a2", "u_min", "u_max"};
    size_t pos = 0;
    while (pos <= spec.size()) {
        const size_t sep = std::min(spec.find(';', pos), spec.size());
        const std::string part = trim(spec.substr(pos, sep - pos));
        pos = sep + 1;
        if (part.empty()) {
            errs.push_back("grid: empty axis entry");
            continue;
        }
        const size_t eq = part.find('=');
        if (eq == std::string::npos) {
            errs.push_back("grid: axis '" + part + "' has no '='");
            continue;
        }
        SweepAxis axis;
        axis.name = trim(part.substr(0, eq));
        bool known = false;
        for (const char* n : kAxisNames)
            if (axis.name == n) known = true;
        if (!known) {
            errs.push_back("grid: unknown axis '" + axis.name + "'");
            continue;
        }
        for (const auto& prev : axes)
            if (prev.name == axis.name) errs.push_back("grid: duplicate axis '" + axis.name + "'");
        const std::string rest = part.substr(eq + 1);
        size_t vpos = 0;
        while (vpos <= rest.size()) {
            const size_t vsep = std::min(rest.find(',', vpos), rest.size());
            const std::string tok = trim(rest.substr(vpos, vsep - vpos));
            vpos = vsep + 1;
            if (tok.empty()) {
                errs.push_back("grid: empty value for axis '" + axis.name + "'");
                continue;
            }
            char* end = nullptr;
            const double val = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size()) {
                errs.push_back("grid: bad value '" + tok + "' for axis '" + axis.name + "'");
                continue;
            }
            axis.values.push_back(val);
        }
        if (axis.values.empty()) errs.push_back("grid: axis '" + axis.name + "' has no values");
        axes.push_back(std::move(axis));
    }
    if (axes.empty()) errs.push_back("grid: no axes given");
    if (!errs.empty()) throw ConfigError(errs);
    return axes;
}

std::string run_sweep(const ScenarioConfig& base, const std::string& grid_spec,
                      const std::string& out_dir) {
    namespace fs = std::filesystem;
    const auto axes = parse_grid_spec(grid_spec);
    fs::create_directories(out_dir);
    size_t total = 1;
    for (const auto& a : axes) total *= a.values.size();

    std::string table = "cell";
    for (const auto& a : axes) table += "," + a.name;
    table += ",status,n_converged,n_aborted,max_abs_u,total_clamp_count\n";

    std::vector<size_t> idx(axes.size(), 0);
    for (size_t cell = 0; cell < total; ++cell) {
        size_t rem = cell;
        for (size_t i = axes.size(); i-- > 0;) {
            idx[i] = rem % axes[i].values.size();
            rem /= axes[i].values.size();
        }
        ScenarioConfig cfg = base;
        std::string row = std::to_string(cell);
        for (size_t i = 0; i < axes.size(); ++i) {
            const double val = axes[i].values[idx[i]];
            row += "," + fmt17(val);
            if (axes[i].name == "mu")
                for (auto& seg : cfg.schedule.segments) seg.mu = val;
            else if (axes[i].name == "b0")
                for (auto& seg : cfg.schedule.segments) seg.b.b0 = val;
            else if (axes[i].name == "b1")
                for (auto& seg : cfg.schedule.segments) seg.b.b1 = val;
            else if (axes[i].name == "a1")
                cfg.gains.a1 = val;
            else if (axes[i].name == "a2")
                cfg.gains.a2 = val;
            else if (axes[i].name == "u_min")
                cfg.bounds.u_min = val;
            else if (axes[i].name == "u_max")
                cfg.bounds.u_max = val;
        }
        try {
            // Round-trip through the validator so cells obey the same rules as files.
            const ScenarioConfig checked = parse_scenario(resolved_config_json(cfg));
            const ScenarioResult r =
                run_scenario(checked, out_dir + "/cell_" + std::to_string(cell));
            long n_conv = 0, n_abort = 0, clamps = 0;
            double max_u = 0.0;
            for (const auto& m : r.metrics) {
                n_conv += m.status == "converged";
                n_abort += m.status == "aborted";
                clamps += m.clamp_count;
                max_u = std::max(max_u, m.max_abs_u);
            }
            row += ",ok," + std::to_string(n_conv) + "," + std::to_string(n_abort) + "," +
                   fmt17(max_u) + "," + std::to_string(clamps);
        } catch (const ConfigError&) {
            row += ",config_error,0,0,nan,0";
        }
        table += row + "\n";
    }
    write_text(out_dir + "/sweep.csv", table);
    return table;
}

} // namespace vdp
