#include "vdp/render.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>

#include "vdp/csv.hpp"
#include "vdp/scenario.hpp"

namespace vdp {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

using Points = std::vector<std::pair<double, double>>;

// Minimal standalone SVG chart: collect data bounds first, then emit shapes.
struct Chart {
    double width = 640.0, height = 480.0;
    double ml = 60.0, mr = 18.0, mt = 30.0, mb = 46.0;
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool seeded = false;
    std::string title, x_label, y_label;
    std::string body;

    void fit(double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        if (!seeded) {
            x_min = x_max = x;
            y_min = y_max = y;
            seeded = true;
            return;
        }
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }

    void pad() {
        auto grow = [](double& lo, double& hi) {
            const double span = hi - lo;
            if (span <= 0.0) {
                lo -= 0.5;
                hi += 0.5;
            } else {
                lo -= 0.04 * span;
                hi += 0.04 * span;
            }
        };
        grow(x_min, x_max);
        grow(y_min, y_max);
    }

    // Force equal data span on both axes (for the Cartesian portrait).
    void square() {
        const double cx = 0.5 * (x_min + x_max);
        const double cy = 0.5 * (y_min + y_max);
        const double half = 0.5 * std::max(x_max - x_min, y_max - y_min);
        x_min = cx - half;
        x_max = cx + half;
        y_min = cy - half;
        y_max = cy + half;
    }

    double px(double x) const { return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr); }
    double py(double y) const {
        return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb);
    }

    void polyline(const Points& pts, const char* color, double w, bool dashed = false) {
        if (pts.size() < 2) return;
        body += "<polyline fill=\"none\" stroke=\"";
        body += color;
        body += "\" stroke-width=\"" + fmt(w) + "\"";
        if (dashed) body += " stroke-dasharray=\"6 4\"";
        body += " points=\"";
        for (const auto& p : pts) body += fmt(px(p.first)) + "," + fmt(py(p.second)) + " ";
        body += "\"/>\n";
    }

    void marker(double x, double y, const char* color) {
        body += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) +
                "\" r=\"3.5\" fill=\"" + std::string(color) + "\"/>\n";
    }

    void hline(double y, const char* color) {
        if (y < y_min || y > y_max) return;
        body += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" +
                fmt(width - mr) + "\" y2=\"" + fmt(py(y)) + "\" stroke=\"" + std::string(color) +
                "\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n";
    }

    std::string render() const {
        std::string s;
        s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
             fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
        s += "<rect width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";
        s += "<text x=\"" + fmt(width / 2) + "\" y=\"18\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
        // plot frame
        s += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(width - ml - mr) +
             "\" height=\"" + fmt(height - mt - mb) +
             "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        // ticks and grid
        for (int i = 0; i <= 4; ++i) {
            const double tx = x_min + i * (x_max - x_min) / 4.0;
            const double ty = y_min + i * (y_max - y_min) / 4.0;
            s += "<line x1=\"" + fmt(px(tx)) + "\" y1=\"" + fmt(height - mb) + "\" x2=\"" +
                 fmt(px(tx)) + "\" y2=\"" + fmt(height - mb + 5) +
                 "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
            s += "<text x=\"" + fmt(px(tx)) + "\" y=\"" + fmt(height - mb + 18) +
                 "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
                 fmt(tx) + "</text>\n";
            s += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(py(ty)) + "\" x2=\"" + fmt(ml) +
                 "\" y2=\"" + fmt(py(ty)) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
            s += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(ty) + 4) +
                 "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(ty) +
                 "</text>\n";
        }
        s += "<text x=\"" + fmt(ml + (width - ml - mr) / 2) + "\" y=\"" + fmt(height - 8) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label +
             "</text>\n";
        s += "<text x=\"14\" y=\"" + fmt(mt + (height - mt - mb) / 2) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
             "transform=\"rotate(-90 14 " + fmt(mt + (height - mt - mb) / 2) + ")\">" + y_label +
             "</text>\n";
        s += body;
        s += "</svg>\n";
        return s;
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Status::runtime_error, "cannot open " + path + " for writing");
    out << text;
}

double wrap_theta(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// Splits a (wrapped-theta, value) curve into segments at the 2*pi seam.
std::vector<Points> wrapped_segments(const std::vector<Sample>& track,
                                     double (*value)(const Sample&)) {
    std::vector<Points> segs;
    Points cur;
    double prev = 0.0;
    for (const Sample& s : track) {
        const double w = wrap_theta(s.theta);
        if (!cur.empty() && std::abs(w - prev) > M_PI) {
            segs.push_back(std::move(cur));
            cur.clear();
        }
        cur.emplace_back(w, value(s));
        prev = w;
    }
    if (!cur.empty()) segs.push_back(std::move(cur));
    return segs;
}

std::vector<ManifoldParams> distinct_manifolds(const ScenarioConfig& cfg) {
    std::vector<ManifoldParams> out;
    for (const auto& seg : cfg.schedule.segments) {
        bool seen = false;
        for (const auto& b : out)
            if (b.b0 == seg.b.b0 && b.b1 == seg.b.b1) seen = true;
        if (!seen) out.push_back(seg.b);
    }
    return out;
}

void render_polar(const ScenarioConfig& cfg, const std::vector<std::vector<Sample>>& tracks,
                  const std::string& path) {
    Chart ch;
    ch.title = "phase portrait (polar)";
    ch.x_label = "theta mod 2pi";
    ch.y_label = "r";
    const auto manifolds = distinct_manifolds(cfg);
    std::vector<Points> mcurves;
    for (const auto& b : manifolds) {
        Points c;
        for (int i = 0; i <= 256; ++i) {
            const double th = kTwoPi * i / 256.0;
            c.emplace_back(th, b.b0 + b.b1 * std::sin(th));
        }
        mcurves.push_back(std::move(c));
    }
    for (const auto& c : mcurves)
        for (const auto& p : c) ch.fit(p.first, p.second);
    for (const auto& t : tracks)
        for (const Sample& s : t) ch.fit(wrap_theta(s.theta), s.r);
    ch.pad();
    for (size_t i = 0; i < mcurves.size(); ++i)
        ch.polyline(mcurves[i], i == 0 ? "#222222" : "#888888", 1.5, true);
    for (size_t k = 0; k < tracks.size(); ++k) {
        const char* color = kPalette[k % kPaletteSize];
        for (const auto& seg : wrapped_segments(tracks[k], [](const Sample& s) { return s.r; }))
            ch.polyline(seg, color, 1.2);
        if (!tracks[k].empty())
            ch.marker(wrap_theta(tracks[k].front().theta), tracks[k].front().r, color);
    }
    write_file(path, ch.render());
}

void render_cartesian(const ScenarioConfig& cfg, const std::vector<std::vector<Sample>>& tracks,
                      const std::string& path) {
    Chart ch;
    ch.width = 560.0;
    ch.height = 560.0;
    ch.title = "phase portrait (cartesian)";
    ch.x_label = "x";
    ch.y_label = "y";
    const auto manifolds = distinct_manifolds(cfg);
    std::vector<Points> mcurves;
    for (const auto& b : manifolds) {
        Points c;
        for (int i = 0; i <= 256; ++i) {
            const double th = kTwoPi * i / 256.0;
            const double g = b.b0 + b.b1 * std::sin(th);
            c.emplace_back(g * std::cos(th), g * std::sin(th));
        }
        mcurves.push_back(std::move(c));
    }
    for (const auto& c : mcurves)
        for (const auto& p : c) ch.fit(p.first, p.second);
    std::vector<Points> xy(tracks.size());
    for (size_t k = 0; k < tracks.size(); ++k) {
        for (const Sample& s : tracks[k]) {
            const CartesianState c = polar_to_cartesian({s.r, s.theta});
            xy[k].emplace_back(c.x, c.y);
            ch.fit(c.x, c.y);
        }
    }
    ch.pad();
    ch.square();
    for (size_t i = 0; i < mcurves.size(); ++i)
        ch.polyline(mcurves[i], i == 0 ? "#222222" : "#888888", 1.5, true);
    for (size_t k = 0; k < tracks.size(); ++k) {
        const char* color = kPalette[k % kPaletteSize];
        ch.polyline(xy[k], color, 1.2);
        if (!xy[k].empty()) ch.marker(xy[k].front().first, xy[k].front().second, color);
    }
    write_file(path, ch.render());
}

void render_control(const ScenarioConfig& cfg, const std::vector<std::vector<Sample>>& tracks,
                    const std::string& path) {
    Chart ch;
    ch.title = "applied control vs angle";
    ch.x_label = "theta mod 2pi";
    ch.y_label = "u";
    for (const auto& t : tracks)
        for (const Sample& s : t) ch.fit(wrap_theta(s.theta), s.u_applied);
    if (std::isfinite(cfg.bounds.u_min)) ch.fit(0.0, cfg.bounds.u_min);
    if (std::isfinite(cfg.bounds.u_max)) ch.fit(0.0, cfg.bounds.u_max);
    if (!ch.seeded) ch.fit(0.0, 0.0);
    ch.pad();
    if (std::isfinite(cfg.bounds.u_min)) ch.hline(cfg.bounds.u_min, "#aa0000");
    if (std::isfinite(cfg.bounds.u_max)) ch.hline(cfg.bounds.u_max, "#aa0000");
    for (size_t k = 0; k < tracks.size(); ++k) {
        const char* color = kPalette[k % kPaletteSize];
        for (const auto& seg :
             wrapped_segments(tracks[k], [](const Sample& s) { return s.u_applied; }))
            ch.polyline(seg, color, 1.0);
    }
    write_file(path, ch.render());
}

} // namespace

void render_svgs(const ScenarioConfig& cfg, const std::vector<std::vector<Sample>>& tracks,
                 const std::string& out_dir) {
    render_polar(cfg, tracks, out_dir + "/portrait_polar.svg");
    render_cartesian(cfg, tracks, out_dir + "/portrait_cartesian.svg");
    render_control(cfg, tracks, out_dir + "/control_vs_theta.svg");
}

void render_run_dir(const std::string& run_dir) {
    namespace fs = std::filesystem;
    const ScenarioConfig cfg = load_scenario_file(run_dir + "/scenario.json");
    std::vector<std::vector<Sample>> tracks;
    for (size_t k = 0;; ++k) {
        const std::string path = run_dir + "/trajectory_" + std::to_string(k) + ".csv";
        if (!fs::exists(path)) break;
        std::vector<Sample> track;
        for (const auto& row : read_trajectory_csv(path)) {
            Sample s;
            s.t = row[0];
            s.r = row[1];
            s.theta = row[2];
            s.v = row[5];
            s.u_raw = row[6];
            s.u_applied = row[7];
            s.clamped = row[8] != 0.0;
            s.b0 = row[9];
            s.b1 = row[10];
            s.mu = row[11];
            s.a1 = row[12];
            s.a2 = row[13];
            track.push_back(s);
        }
        tracks.push_back(std::move(track));
    }
    if (tracks.empty())
        throw Error(Status::runtime_error, run_dir + " contains no trajectory CSV files");
    render_svgs(cfg, tracks, run_dir);
}

} // namespace vdp
