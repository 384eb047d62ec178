#include "vdp/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vdp/errors.hpp"

namespace vdp {

double identify_mu(const std::vector<Sample>& window, double phi_min) {
    double num = 0.0;
    double den = 0.0;
    int usable = 0;
    for (size_t i = 1; i + 1 < window.size(); ++i) {
        const Sample& prev = window[i - 1];
        const Sample& mid = window[i];
        const Sample& next = window[i + 1];
        const double dt = next.t - prev.t;
        if (!(dt > 0.0)) continue;
        const double c = std::cos(mid.theta);
        const double sn = std::sin(mid.theta);
        const double phi = mid.r * c * c * (1.0 - mid.r * mid.r * sn * sn);
        if (!(std::abs(phi) >= phi_min)) continue;
        const double drdt = (next.r - prev.r) / dt;
        num += phi * (drdt - mid.u_applied * c);
        den += phi * phi;
        ++usable;
    }
    if (usable < 10) throw InsufficientExcitation(usable);
    return num / den;
}

WorstCase worst_case_control(const ChiParams& a, const ManifoldParams& b, double mu, double v_max,
                             int grid_n, double r_guard, double eps_den) {
    if (grid_n < 4) throw ConfigError({"worst-case grid_n must be at least 4"});
    const int nv = grid_n / 4 + 1;
    const double dv = (nv > 1) ? 2.0 * v_max / (nv - 1) : 0.0;
    WorstCase wc{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int i = 0; i < grid_n; ++i) {
        const double theta = 2.0 * M_PI * i / grid_n;
        const double g = b.b0 + b.b1 * std::sin(theta);
        for (int j = 0; j < nv; ++j) {
            const double v = (j == nv - 1) ? v_max : -v_max + j * dv;
            const double r = v + g;
            if (!(r > r_guard))
                throw DegenerateManifold("worst-case grid reaches r=" + std::to_string(r) +
                                         " at theta=" + std::to_string(theta));
            const double d = r + b.b1 * std::sin(theta);
            if (!(d > eps_den * std::max(r, 1.0)))
                throw DegenerateManifold("worst-case grid denominator " + std::to_string(d) +
                                         " at theta=" + std::to_string(theta) +
                                         " v=" + std::to_string(v));
            const double u = control_sinusoidal_cancelled({r, theta}, a, b, mu).u_raw;
            wc.lo = std::min(wc.lo, u);
            wc.hi = std::max(wc.hi, u);
        }
    }
    return wc;
}

double largest_feasible_scale(const std::function<bool(double)>& feasible, double tol,
                              bool* used_scan) {
    if (used_scan) *used_scan = false;
    if (feasible(1.0)) return 1.0;
    if (feasible(0.0)) {
        double lo = 0.0;
        double hi = 1.0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? lo : hi) = mid;
        }
        return lo;
    }
    if (used_scan) *used_scan = true;
    for (int k = 1023; k >= 1; --k) {
        const double s = k / 1024.0;
        if (feasible(s)) return s;
    }
    throw Infeasible("no feasible gain scale in [0,1]");
}

MiacController::MiacController(const AdaptationConfig& cfg, const ChiParams& a_nominal,
                               const AdmissibleSets& sets, const ControlBounds& bounds,
                               const Schedule& schedule, std::uint64_t seed)
    : cfg_(cfg), a_nominal_(a_nominal), sets_(sets), bounds_(bounds), schedule_(&schedule),
      rng_(seed) {}

EpochCallback MiacController::callback() {
    return [this](double t, Trajectory& traj, const ChiParams& a) { return epoch(t, traj, a); };
}

ChiParams MiacController::epoch(double t, Trajectory& traj, const ChiParams& a_current) {
    EpochRecord rec;
    rec.t = t;
    std::normal_distribution<double> gauss(0.0, 1.0);

    const auto& all = traj.samples;
    const size_t n = std::min(all.size(), static_cast<size_t>(cfg_.id_window));
    std::vector<Sample> window(all.end() - static_cast<long>(n), all.end());
    for (auto& s : window) {
        s.r += cfg_.sigma * gauss(rng_);
        s.theta += cfg_.sigma * gauss(rng_);
    }
    const ManifoldParams b_cmd = schedule_->active_at(t).b;
    const ManifoldParams b_tilde{b_cmd.b0 + cfg_.sigma * gauss(rng_),
                                 b_cmd.b1 + cfg_.sigma * gauss(rng_)};
    rec.b0_tilde = b_tilde.b0;
    rec.b1_tilde = b_tilde.b1;

    auto finish = [&](const char* status, const ChiParams& adopted) {
        rec.status = status;
        rec.a1 = adopted.a1;
        traj.events.push_back({t, EventKind::adaptation_epoch,
                               rec.status + " a1=" + std::to_string(adopted.a1)});
        log_.push_back(rec);
        return adopted;
    };

    double mu_tilde = 0.0;
    try {
        mu_tilde = identify_mu(window, cfg_.phi_min);
    } catch (const InsufficientExcitation&) {
        return finish("skipped", a_current);
    }
    mu_tilde = std::clamp(mu_tilde, sets_.mu.lo, sets_.mu.hi);
    rec.mu_tilde = mu_tilde;

    auto feasible = [&](double s) {
        const ChiParams cand{s * a_nominal_.a1, a_nominal_.a2};
        if (!sets_.a1.contains(cand.a1) || !sets_.a2.contains(cand.a2)) return false;
        try {
            const WorstCase wc =
                worst_case_control(cand, b_tilde, mu_tilde, cfg_.v_max, cfg_.grid_n);
            return wc.lo >= bounds_.u_min && wc.hi <= bounds_.u_max;
        } catch (const DegenerateManifold&) {
            return false;
        }
    };
    try {
        bool used_scan = false;
        const double s = largest_feasible_scale(feasible, 1e-3, &used_scan);
        const ChiParams adopted{s * a_nominal_.a1, a_nominal_.a2};
        const WorstCase wc = worst_case_control(adopted, b_tilde, mu_tilde, cfg_.v_max, cfg_.grid_n);
        if (!(wc.lo >= bounds_.u_min && wc.hi <= bounds_.u_max))
            throw Infeasible("adopted gains fail the direct envelope check");
        rec.s = s;
        rec.fallback_scan = used_scan;
        rec.wc_lo = wc.lo;
        rec.wc_hi = wc.hi;
        return finish("updated", adopted);
    } catch (const Infeasible&) {
        return finish("infeasible", a_current);
    } catch (const DegenerateManifold&) {
        return finish("infeasible", a_current);
    }
}

} // namespace vdp
