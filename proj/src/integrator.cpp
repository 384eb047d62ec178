#include "vdp/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace vdp {

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::clamp_on: return "clamp_on";
        case EventKind::clamp_off: return "clamp_off";
        case EventKind::guard_radius_hit: return "guard_radius_hit";
        case EventKind::non_finite_derivative: return "non_finite_derivative";
        case EventKind::non_positive_radius: return "non_positive_radius";
        case EventKind::degenerate_manifold: return "degenerate_manifold";
        case EventKind::singular_denominator: return "singular_denominator";
        case EventKind::schedule_switch: return "schedule_switch";
        case EventKind::adaptation_epoch: return "adaptation_epoch";
        case EventKind::monitor_violation: return "monitor_violation";
    }
    return "unknown";
}

namespace {

struct Node {
    double t;
    bool is_switch = false;
    bool is_epoch = false;
};

std::vector<Node> build_nodes(const Schedule& sched, double t_end, double epoch_period) {
    std::vector<Node> nodes;
    auto add = [&](double t, bool sw, bool ep) {
        for (auto& n : nodes) {
            if (std::abs(n.t - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
                n.is_switch |= sw;
                n.is_epoch |= ep;
                return;
            }
        }
        nodes.push_back({t, sw, ep});
    };
    for (double ts : sched.switch_times())
        if (ts > 0.0 && ts < t_end) add(ts, true, false);
    if (epoch_period > 0.0) {
        for (long k = 1; k * epoch_period <= t_end * (1.0 + 1e-12); ++k)
            add(std::min(k * epoch_period, t_end), false, true);
    }
    add(t_end, false, false);
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });
    return nodes;
}

} // namespace

Trajectory integrate_closed_loop(const PolarState& ic, const Schedule& sched, const ChiParams& a0,
                                 const ControlBounds& bounds, const IntegratorConfig& cfg,
                                 double epoch_period, const EpochCallback& epoch_cb) {
    Trajectory traj;
    traj.samples.reserve(
        static_cast<size_t>(cfg.t_end / (cfg.h * std::max(1, cfg.sample_every))) + 16);
    ChiParams a = a0;
    PolarState y = ic;
    bool prev_clamped = false;
    double t_cur = 0.0;

    auto record_sample = [&](double t, const ScheduleSegment& seg) {
        const ControlEvaluation raw = control_sinusoidal_cancelled(y, a, seg.b, seg.mu);
        const ControlEvaluation sat = saturate(raw.u_raw, bounds);
        traj.samples.push_back({t, y.r, y.theta,
                                y.r - (seg.b.b0 + seg.b.b1 * std::sin(y.theta)), raw.u_raw,
                                sat.u_applied, sat.clamped, seg.b.b0, seg.b.b1, seg.mu, a.a1,
                                a.a2});
        if (sat.clamped != prev_clamped) {
            traj.events.push_back(
                {t, sat.clamped ? EventKind::clamp_on : EventKind::clamp_off, ""});
            prev_clamped = sat.clamped;
        }
    };

    auto abort_with = [&](double t, EventKind kind, const std::string& why) {
        traj.events.push_back({t, kind, why});
        traj.aborted = true;
        traj.abort_time = t;
        traj.abort_reason = why;
    };

    try {
        record_sample(0.0, sched.active_at(0.0));
        const auto nodes = build_nodes(sched, cfg.t_end, epoch_period);
        double seg_start = 0.0;
        long step_index = 0;
        for (const Node& node : nodes) {
            const ScheduleSegment& seg = sched.active_at(seg_start);
            auto field = [&](const PolarState& p) {
                return closed_loop_field(p, a, seg.b, seg.mu, bounds).d;
            };
            const double span = node.t - seg_start;
            const long m = std::max<long>(1, static_cast<long>(std::ceil(span / cfg.h - 1e-9)));
            for (long k = 1; k <= m; ++k) {
                const double t_next = (k == m) ? node.t : seg_start + k * cfg.h;
                const double h_k = t_next - t_cur;
                const PolarState y_prev = y;
                y = rk4_step(field, y_prev, h_k, t_cur);
                if (!std::isfinite(y.r) || !std::isfinite(y.theta))
                    throw NonFiniteDerivative(t_next);
                if (cfg.error_monitor) {
                    PolarState half = rk4_step(field, y_prev, h_k / 2.0, t_cur);
                    half = rk4_step(field, half, h_k / 2.0, t_cur);
                    const double diff =
                        std::max(std::abs(y.r - half.r), std::abs(y.theta - half.theta));
                    const double tol = 10.0 * std::pow(h_k, 5) *
                                       (1.0 + std::max(std::abs(y_prev.r), std::abs(y_prev.theta)));
                    if (diff > tol) {
                        traj.events.push_back({t_next, EventKind::monitor_violation,
                                               "step-doubling difference " + std::to_string(diff) +
                                                   " exceeds " + std::to_string(tol)});
                        ++traj.monitor_violations;
                    }
                }
                if (y.r <= cfg.r_guard) throw GuardRadiusHit(t_next, y.r, cfg.r_guard);
                t_cur = t_next;
                ++step_index;
                if (step_index % cfg.sample_every == 0 || k == m) record_sample(t_cur, seg);
            }
            if (node.is_switch && node.t < cfg.t_end) {
                const ScheduleSegment& next = sched.active_at(node.t);
                traj.events.push_back({node.t, EventKind::schedule_switch,
                                       "b0=" + std::to_string(next.b.b0) +
                                           " b1=" + std::to_string(next.b.b1) +
                                           " mu=" + std::to_string(next.mu)});
            }
            if (node.is_epoch && epoch_cb) a = epoch_cb(node.t, traj, a);
            seg_start = node.t;
        }
    } catch (const GuardRadiusHit& e) {
        abort_with(e.t, EventKind::guard_radius_hit, e.what());
    } catch (const NonFiniteDerivative& e) {
        abort_with(e.t, EventKind::non_finite_derivative, e.what());
    } catch (const NonPositiveRadius& e) {
        abort_with(t_cur, EventKind::non_positive_radius, e.what());
    } catch (const DegenerateManifold& e) {
        abort_with(t_cur, EventKind::degenerate_manifold, e.what());
    } catch (const SingularDenominator& e) {
        abort_with(t_cur, EventKind::singular_denominator, e.what());
    }
    return traj;
}

} // namespace vdp
