#include "irsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "irsim/fieldio.hpp"

namespace irsim {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid configuration:\n  " + join(violations, "\n  ")),
      violations_(std::move(violations)) {}

const char* to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Steer: return "steer";
        case ScenarioKind::Focus: return "focus";
        case ScenarioKind::Modulate: return "modulate";
        case ScenarioKind::TimeVary: return "timevary";
        case ScenarioKind::Bounds: return "bounds";
    }
    return "?";
}

ObservationGrid AngularGridConfig::build() const {
    const double d2r = kPi / 180.0;
    // keep the azimuth inside (-180, 180]
    double phi_first = phi_min_deg;
    if (phi_first <= -180.0) phi_first = -180.0 + phi_step_deg;
    return ObservationGrid::angular(
        ObservationGrid::axis(theta_min_deg * d2r, theta_max_deg * d2r + 1e-12,
                              theta_step_deg * d2r),
        ObservationGrid::axis(phi_first * d2r, phi_max_deg * d2r + 1e-12, phi_step_deg * d2r));
}

std::vector<double> DepthAxisConfig::build() const {
    return ObservationGrid::axis(min_m, max_m + step_m * 1e-9, step_m);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class Checker {
  public:
    std::vector<std::string> violations;

    void reject_unknown(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
        if (!obj.is_object()) return;
        for (const auto& item : obj.items()) {
            bool known = false;
            for (const char* k : allowed) known = known || item.key() == k;
            if (!known) violations.push_back(path + item.key() + ": unknown key");
        }
    }

    bool has(const json& obj, const char* key) const {
        return obj.is_object() && obj.contains(key);
    }

    // Fetches a number, recording a violation when missing or mistyped.
    std::optional<double> number(const json& obj, const std::string& path, const char* key,
                                 bool required) {
        if (!has(obj, key)) {
            if (required) violations.push_back(path + key + ": missing required key");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            violations.push_back(path + key + ": expected a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<double> positive(const json& obj, const std::string& path, const char* key,
                                   bool required) {
        auto v = number(obj, path, key, required);
        if (v && !(*v > 0.0)) {
            violations.push_back(path + key + ": must be > 0");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::string> string(const json& obj, const std::string& path, const char* key,
                                      bool required) {
        if (!has(obj, key)) {
            if (required) violations.push_back(path + key + ": missing required key");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_string()) {
            violations.push_back(path + key + ": expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }
};

std::optional<DirectionAngles> parse_direction(Checker& c, const json& obj,
                                               const std::string& path) {
    auto t = c.number(obj, path, "theta_deg", true);
    auto p = c.number(obj, path, "phi_deg", true);
    if (!t || !p) return std::nullopt;
    if (std::abs(*t) > 90.0 + 1e-12) {
        c.violations.push_back(path + "theta_deg: must lie in [-90, 90]");
        return std::nullopt;
    }
    if (*p <= -180.0 - 1e-12 || *p > 180.0 + 1e-12) {
        c.violations.push_back(path + "phi_deg: must lie in (-180, 180]");
        return std::nullopt;
    }
    return DirectionAngles{*t * kPi / 180.0, *p * kPi / 180.0};
}

void parse_angular_grid(Checker& c, const json& obj, const std::string& path,
                        AngularGridConfig& grid) {
    c.reject_unknown(obj, path,
                     {"theta_min_deg", "theta_max_deg", "theta_step_deg", "phi_min_deg",
                      "phi_max_deg", "phi_step_deg"});
    if (auto v = c.number(obj, path, "theta_min_deg", false)) grid.theta_min_deg = *v;
    if (auto v = c.number(obj, path, "theta_max_deg", false)) grid.theta_max_deg = *v;
    if (auto v = c.positive(obj, path, "theta_step_deg", false)) grid.theta_step_deg = *v;
    if (auto v = c.number(obj, path, "phi_min_deg", false)) grid.phi_min_deg = *v;
    if (auto v = c.number(obj, path, "phi_max_deg", false)) grid.phi_max_deg = *v;
    if (auto v = c.positive(obj, path, "phi_step_deg", false)) grid.phi_step_deg = *v;
    if (grid.theta_min_deg < 0.0 || grid.theta_max_deg > 90.0 + 1e-12 ||
        grid.theta_min_deg > grid.theta_max_deg)
        c.violations.push_back(path + "theta range: must satisfy 0 <= min <= max <= 90");
    if (grid.phi_min_deg < -180.0 || grid.phi_max_deg > 180.0 + 1e-12 ||
        grid.phi_min_deg > grid.phi_max_deg)
        c.violations.push_back(path + "phi range: must satisfy -180 <= min <= max <= 180");
}

void parse_depth_axis(Checker& c, const json& obj, const std::string& path,
                      DepthAxisConfig& axis) {
    c.reject_unknown(obj, path, {"min_m", "max_m", "step_m"});
    if (auto v = c.positive(obj, path, "min_m", false)) axis.min_m = *v;
    if (auto v = c.positive(obj, path, "max_m", false)) axis.max_m = *v;
    if (auto v = c.positive(obj, path, "step_m", false)) axis.step_m = *v;
    if (axis.min_m > axis.max_m) c.violations.push_back(path + "min_m: exceeds max_m");
}

} // namespace

ParsedConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError({"syntax error at line " + std::to_string(line) + ": " + e.what()});
    }
    if (!root.is_object()) throw ConfigError({"top level must be a JSON object"});

    Checker c;
    ParsedConfig parsed;
    ScenarioConfig& cfg = parsed.config;

    c.reject_unknown(root, "",
                     {"scenario", "frequency_hz", "wave_speed_mps", "seed", "aperture", "tag",
                      "steer", "focus", "modulate", "timevary"});

    if (auto kind = c.string(root, "", "scenario", true)) {
        if (*kind == "steer") cfg.kind = ScenarioKind::Steer;
        else if (*kind == "focus") cfg.kind = ScenarioKind::Focus;
        else if (*kind == "modulate") cfg.kind = ScenarioKind::Modulate;
        else if (*kind == "timevary") cfg.kind = ScenarioKind::TimeVary;
        else if (*kind == "bounds") cfg.kind = ScenarioKind::Bounds;
        else c.violations.push_back("scenario: must be one of steer, focus, modulate, timevary, bounds");
    }

    if (auto f = c.positive(root, "", "frequency_hz", true)) cfg.ctx.frequency = *f;
    if (auto s = c.positive(root, "", "wave_speed_mps", false)) cfg.ctx.wave_speed = *s;
    if (c.has(root, "seed")) {
        const json& v = root.at("seed");
        if (v.is_number_unsigned()) cfg.seed = v.get<std::uint64_t>();
        else c.violations.push_back("seed: expected an unsigned integer");
    }

    // aperture
    if (!c.has(root, "aperture")) {
        c.violations.push_back("aperture: missing required key");
    } else {
        const json& ap = root.at("aperture");
        const std::string path = "aperture.";
        c.reject_unknown(ap, path,
                         {"count_x", "count_y", "spacing_x_m", "spacing_y_m",
                          "spacing_wavelengths"});
        auto get_count = [&](const char* key) -> std::size_t {
            if (!c.has(ap, key)) {
                c.violations.push_back(path + key + ": missing required key");
                return 0;
            }
            const json& v = ap.at(key);
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
                c.violations.push_back(path + key + ": must be an integer >= 1");
                return 0;
            }
            return v.get<std::size_t>();
        };
        cfg.aperture.count_x = get_count("count_x");
        cfg.aperture.count_y = get_count("count_y");
        const bool has_wl = c.has(ap, "spacing_wavelengths");
        const bool has_m = c.has(ap, "spacing_x_m") || c.has(ap, "spacing_y_m");
        if (has_wl && has_m) {
            c.violations.push_back(path +
                                   "spacing: give either spacing_wavelengths or spacing_*_m, not both");
        } else if (has_wl) {
            if (auto w = c.positive(ap, path, "spacing_wavelengths", true);
                w && cfg.ctx.frequency > 0.0) {
                cfg.aperture.spacing_x = cfg.aperture.spacing_y = *w * cfg.ctx.wavelength();
            }
        } else {
            if (auto sx = c.positive(ap, path, "spacing_x_m", true)) cfg.aperture.spacing_x = *sx;
            if (auto sy = c.positive(ap, path, "spacing_y_m", true)) cfg.aperture.spacing_y = *sy;
        }
    }

    // tag (required for steer/focus/modulate)
    const bool needs_tag = cfg.kind == ScenarioKind::Steer || cfg.kind == ScenarioKind::Focus ||
                           cfg.kind == ScenarioKind::Modulate;
    if (c.has(root, "tag")) {
        const json& tag = root.at("tag");
        const std::string path = "tag.";
        c.reject_unknown(tag, path, {"theta_deg", "phi_deg", "distance_m", "position_m"});
        if (c.has(tag, "position_m")) {
            const json& v = tag.at("position_m");
            if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
                !v[2].is_number()) {
                c.violations.push_back(path + "position_m: expected [x, y, z] numbers");
            } else {
                cfg.tag = SourceModel::point_source(
                    {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
            }
        } else {
            auto dir = parse_direction(c, tag, path);
            auto dist = c.positive(tag, path, "distance_m", true);
            if (dir && dist) cfg.tag = SourceModel::from_incidence(*dir, *dist);
        }
    } else if (needs_tag) {
        c.violations.push_back("tag: missing required key for scenario " +
                               std::string(to_string(cfg.kind)));
    }

    // scenario sections
    auto require_section = [&](const char* key) -> const json* {
        if (!c.has(root, key)) {
            c.violations.push_back(std::string(key) + ": missing required key for this scenario");
            return nullptr;
        }
        return &root.at(key);
    };

    switch (cfg.kind) {
        case ScenarioKind::Steer: {
            if (const json* sec = require_section("steer")) {
                const std::string path = "steer.";
                c.reject_unknown(*sec, path, {"theta_deg", "phi_deg", "grid"});
                if (auto dir = parse_direction(c, *sec, path)) cfg.steer_direction = *dir;
                if (c.has(*sec, "grid"))
                    parse_angular_grid(c, sec->at("grid"), path + "grid.", cfg.steer_grid);
            }
            break;
        }
        case ScenarioKind::Focus: {
            if (const json* sec = require_section("focus")) {
                const std::string path = "focus.";
                c.reject_unknown(*sec, path, {"theta_deg", "phi_deg", "distance_m", "depth_axis"});
                if (auto dir = parse_direction(c, *sec, path)) cfg.focus.direction = *dir;
                if (auto d = c.positive(*sec, path, "distance_m", true)) cfg.focus.distance = *d;
                if (c.has(*sec, "depth_axis"))
                    parse_depth_axis(c, sec->at("depth_axis"), path + "depth_axis.",
                                     cfg.focus_depth_axis);
            }
            break;
        }
        case ScenarioKind::Modulate: {
            if (const json* sec = require_section("modulate")) {
                const std::string path = "modulate.";
                c.reject_unknown(*sec, path, {"receiver", "threshold_db", "bits", "depth_axis"});
                if (!c.has(*sec, "receiver")) {
                    c.violations.push_back(path + "receiver: missing required key");
                } else {
                    const json& rx = sec->at("receiver");
                    const std::string rpath = path + "receiver.";
                    c.reject_unknown(rx, rpath, {"theta_deg", "phi_deg", "distance_m"});
                    auto dir = parse_direction(c, rx, rpath);
                    auto dist = c.positive(rx, rpath, "distance_m", true);
                    if (dir && dist)
                        cfg.receiver.position = direction_to_unit_vector(*dir) * *dist;
                }
                if (auto t = c.number(*sec, path, "threshold_db", false)) {
                    if (!(*t < 0.0))
                        c.violations.push_back(path + "threshold_db: must be negative");
                    else cfg.receiver.threshold_db = *t;
                }
                if (auto b = c.string(*sec, path, "bits", true)) {
                    cfg.bits = *b;
                    if (cfg.bits.empty())
                        c.violations.push_back(path + "bits: must contain at least one symbol");
                    for (char ch : cfg.bits)
                        if (ch != '0' && ch != '1') {
                            c.violations.push_back(path + "bits: only 0/1 symbols allowed");
                            break;
                        }
                }
                if (c.has(*sec, "depth_axis"))
                    parse_depth_axis(c, sec->at("depth_axis"), path + "depth_axis.",
                                     cfg.modulate_depth_axis);
            }
            break;
        }
        case ScenarioKind::TimeVary: {
            if (const json* sec = require_section("timevary")) {
                const std::string path = "timevary.";
                c.reject_unknown(*sec, path,
                                 {"mod_frequency_hz", "harmonics", "delays", "grid", "spectrum",
                                  "display"});
                if (auto f0 = c.positive(*sec, path, "mod_frequency_hz", true))
                    cfg.timevary.mod_frequency_hz = *f0;
                if (c.has(*sec, "harmonics")) {
                    const json& hs = sec->at("harmonics");
                    if (!hs.is_array() || hs.empty()) {
                        c.violations.push_back(path + "harmonics: expected a non-empty array");
                    } else {
                        cfg.timevary.harmonics.clear();
                        for (const json& h : hs) {
                            if (!h.is_number_integer()) {
                                c.violations.push_back(path + "harmonics: entries must be integers");
                                break;
                            }
                            cfg.timevary.harmonics.push_back(h.get<int>());
                        }
                    }
                }
                if (c.has(*sec, "delays")) {
                    const json& d = sec->at("delays");
                    if (d.is_string()) {
                        if (d.get<std::string>() != "synchronized")
                            c.violations.push_back(path +
                                                   "delays: string form must be \"synchronized\"");
                        cfg.timevary.delay_mode = TimeVaryConfig::DelayMode::Synchronized;
                    } else if (d.is_object() && d.contains("target")) {
                        const std::string dpath = path + "delays.";
                        c.reject_unknown(d, dpath, {"target", "harmonic"});
                        cfg.timevary.delay_mode = TimeVaryConfig::DelayMode::Target;
                        if (auto dir = parse_direction(c, d.at("target"), dpath + "target."))
                            cfg.timevary.target = *dir;
                        if (c.has(d, "harmonic")) {
                            const json& h = d.at("harmonic");
                            if (!h.is_number_integer() || h.get<int>() % 2 == 0)
                                c.violations.push_back(dpath + "harmonic: must be an odd integer");
                            else cfg.timevary.target_harmonic = h.get<int>();
                        }
                    } else if (d.is_object() && d.contains("matrix")) {
                        const std::string dpath = path + "delays.";
                        c.reject_unknown(d, dpath, {"matrix"});
                        cfg.timevary.delay_mode = TimeVaryConfig::DelayMode::Explicit;
                        const json& m = d.at("matrix");
                        bool ok = m.is_array();
                        if (ok) {
                            for (const json& row : m) {
                                if (!row.is_array()) { ok = false; break; }
                                for (const json& v : row) {
                                    if (!v.is_number()) { ok = false; break; }
                                    cfg.timevary.delay_matrix.push_back(v.get<double>());
                                }
                            }
                        }
                        if (!ok)
                            c.violations.push_back(dpath + "matrix: expected rows of numbers");
                    } else {
                        c.violations.push_back(
                            path + "delays: expected \"synchronized\", {target,...} or {matrix}");
                    }
                }
                if (c.has(*sec, "grid"))
                    parse_angular_grid(c, sec->at("grid"), path + "grid.", cfg.timevary.grid);
                if (c.has(*sec, "spectrum")) {
                    const json& sp = sec->at("spectrum");
                    const std::string spath = path + "spectrum.";
                    c.reject_unknown(sp, spath, {"theta_deg", "phi_deg", "k_max"});
                    if (auto dir = parse_direction(c, sp, spath))
                        cfg.timevary.spectrum_direction = *dir;
                    if (c.has(sp, "k_max")) {
                        const json& km = sp.at("k_max");
                        if (!km.is_number_integer() || km.get<int>() < 1)
                            c.violations.push_back(spath + "k_max: must be an integer >= 1");
                        else cfg.timevary.spectrum_k_max = km.get<int>();
                    }
                }
                if (auto disp = c.string(*sec, path, "display", false)) {
                    if (*disp == "absolute") cfg.timevary.display = TimeVaryConfig::Display::Absolute;
                    else if (*disp == "invariant_peak")
                        cfg.timevary.display = TimeVaryConfig::Display::InvariantPeak;
                    else if (*disp == "per_harmonic")
                        cfg.timevary.display = TimeVaryConfig::Display::PerHarmonic;
                    else
                        c.violations.push_back(
                            path + "display: must be absolute, invariant_peak or per_harmonic");
                }
            }
            break;
        }
        case ScenarioKind::Bounds:
            break;
    }

    // cross-field checks that need a structurally valid config
    if (c.violations.empty()) {
        if (cfg.kind == ScenarioKind::TimeVary) {
            if (cfg.timevary.delay_mode == TimeVaryConfig::DelayMode::Explicit &&
                cfg.timevary.delay_matrix.size() != cfg.aperture.size())
                c.violations.push_back("timevary.delays.matrix: size does not match the aperture");
            for (int k : cfg.timevary.harmonics)
                if (k == 0 || k % 2 == 0)
                    parsed.warnings.push_back("timevary.harmonics: harmonic " + std::to_string(k) +
                                              " is even and carries no energy");
            SquareWaveProfile probe = SquareWaveProfile::synchronized(
                cfg.aperture.count_x, cfg.aperture.count_y, cfg.timevary.mod_frequency_hz);
            if (auto warn = probe.carrier_ratio_warning(cfg.ctx))
                parsed.warnings.push_back("timevary.mod_frequency_hz: " + *warn);
        }
        if (cfg.kind == ScenarioKind::Focus) {
            if (auto warn = fresnel_warning(cfg.focus, cfg.aperture, cfg.ctx))
                parsed.warnings.push_back("focus.distance_m: " + *warn);
        }
        if (cfg.kind == ScenarioKind::Modulate) {
            try {
                cfg.receiver.validate();
                if (auto warn = fresnel_warning(cfg.receiver.focal_spec(), cfg.aperture, cfg.ctx))
                    parsed.warnings.push_back("modulate.receiver: " + *warn);
            } catch (const std::exception& e) {
                c.violations.push_back(std::string("modulate.receiver: ") + e.what());
            }
        }
    }

    if (!c.violations.empty()) throw ConfigError(std::move(c.violations));
    return parsed;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace {

struct Emitter {
    std::filesystem::path dir;
    ScenarioResult* result;

    void emit(const std::string& name, const std::string& text) const {
        write_text_file((dir / name).string(), text);
        result->files.push_back(name);
    }
};

std::size_t argmax_magnitude(const std::vector<Complex>& values) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double m = std::abs(values[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    return best;
}

void run_steer(const ScenarioConfig& cfg, const Emitter& out, std::string& summary) {
    const std::vector<Point3> elems = element_positions(cfg.aperture);
    const ComplexField reference = radiate(*cfg.tag, elems, cfg.ctx);
    const PhaseProfile profile =
        steering_profile(cfg.aperture, reference, SteeringSpec{cfg.steer_direction}, cfg.ctx);
    const ObservationGrid grid = cfg.steer_grid.build();
    const std::vector<DirectionAngles> dirs = grid.directions();
    const AngularPattern pattern = reflect_far_field(cfg.aperture, reference, profile, dirs, cfg.ctx);

    out.emit("pattern.csv", field_map_to_text(pattern, Normalization::self_peak()));
    out.emit("profile.txt", profile_to_text(profile, cfg.aperture));

    const std::size_t peak = argmax_magnitude(pattern.values);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "target_theta_deg=%.6f\ntarget_phi_deg=%.6f\npeak_theta_deg=%.6f\n"
                  "peak_phi_deg=%.6f\n",
                  cfg.steer_direction.theta * 180.0 / kPi, cfg.steer_direction.phi * 180.0 / kPi,
                  dirs[peak].theta * 180.0 / kPi, dirs[peak].phi * 180.0 / kPi);
    summary += buf;
}

void run_focus(const ScenarioConfig& cfg, const Emitter& out, std::string& summary) {
    const std::vector<Point3> elems = element_positions(cfg.aperture);
    const ComplexField reference = radiate(*cfg.tag, elems, cfg.ctx);
    const PhaseProfile profile = focusing_profile(cfg.aperture, reference, cfg.focus, cfg.ctx);

    const std::vector<double> axis = cfg.focus_depth_axis.build();
    const Point3 u = direction_to_unit_vector(cfg.focus.direction);
    std::vector<Point3> pts;
    pts.reserve(axis.size());
    for (double r : axis) pts.push_back(u * r);
    const ComplexField field = reflect_and_radiate(cfg.aperture, reference, profile, pts, cfg.ctx);

    out.emit("depth.csv", field_map_to_text(field, Normalization::self_peak()));
    out.emit("profile.txt", profile_to_text(profile, cfg.aperture));

    const std::size_t peak = argmax_magnitude(field.values);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "focal_distance_m=%.6f\npeak_distance_m=%.6f\npeak_error_percent=%.6f\n",
                  cfg.focus.distance, axis[peak],
                  100.0 * (axis[peak] - cfg.focus.distance) / cfg.focus.distance);
    summary += buf;
}

void run_modulate(const ScenarioConfig& cfg, const Emitter& out, ScenarioResult& result,
                  std::string& summary) {
    const FramePlan plan = FramePlan::from_string(cfg.bits, cfg.seed);
    const LinkReport report = run_link(cfg.aperture, *cfg.tag, cfg.receiver, plan, cfg.ctx);
    for (const std::string& w : report.warnings) result.warnings.push_back(w);

    out.emit("link.csv", link_report_to_text(report));

    // Fig.-5-style depth curves through the receiver direction, one focused
    // and one defocused frame, both referenced to the focused curve's peak.
    const std::vector<Point3> elems = element_positions(cfg.aperture);
    const ComplexField reference = radiate(*cfg.tag, elems, cfg.ctx);
    const FocalSpec focus = cfg.receiver.focal_spec();
    const PhaseProfile focused = focusing_profile(cfg.aperture, reference, focus, cfg.ctx);
    std::uint64_t defocus_seed = plan.frame_seed(0);
    for (std::size_t f = 0; f < plan.bits.size(); ++f)
        if (plan.bits[f] == 0) {
            defocus_seed = plan.frame_seed(f);
            break;
        }
    const PhaseProfile chaotic = randomized_profile(cfg.aperture, defocus_seed);

    const std::vector<double> axis = cfg.modulate_depth_axis.build();
    const Point3 u = direction_to_unit_vector(focus.direction);
    std::vector<Point3> pts;
    pts.reserve(axis.size());
    for (double r : axis) pts.push_back(u * r);
    const ComplexField field_focused =
        reflect_and_radiate(cfg.aperture, reference, focused, pts, cfg.ctx);
    const ComplexField field_chaotic =
        reflect_and_radiate(cfg.aperture, reference, chaotic, pts, cfg.ctx);
    double ref_peak = 0.0;
    for (const Complex& v : field_focused.values) ref_peak = std::max(ref_peak, std::abs(v));
    out.emit("depth_focused.csv",
             field_map_to_text(field_focused, Normalization::against(ref_peak)));
    out.emit("depth_defocused.csv",
             field_map_to_text(field_chaotic, Normalization::against(ref_peak)));

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "bits=%zu\nbit_errors=%zu\ncontrast_db=%.6f\nthreshold_db=%.6f\n",
                  report.frames.size(), report.bit_errors, report.contrast_db,
                  cfg.receiver.threshold_db);
    summary += buf;
}

void run_timevary(const ScenarioConfig& cfg, const Emitter& out, std::string& summary) {
    const TimeVaryConfig& tv = cfg.timevary;
    SquareWaveProfile profile = SquareWaveProfile::synchronized(
        cfg.aperture.count_x, cfg.aperture.count_y, tv.mod_frequency_hz);
    if (tv.delay_mode == TimeVaryConfig::DelayMode::Target) {
        profile.delays = steering_delays(cfg.aperture, tv.target, tv.target_harmonic, cfg.ctx,
                                         tv.mod_frequency_hz);
    } else if (tv.delay_mode == TimeVaryConfig::DelayMode::Explicit) {
        profile.delays = tv.delay_matrix;
    }

    const ObservationGrid grid = tv.grid.build();
    const std::vector<DirectionAngles> dirs = grid.directions();

    const HarmonicPattern invariant = invariant_pattern(cfg.aperture, cfg.ctx, dirs);
    double invariant_peak = 0.0;
    for (const Complex& v : invariant.values)
        invariant_peak = std::max(invariant_peak, std::abs(v));

    auto display_norm = [&](void) -> Normalization {
        switch (tv.display) {
            case TimeVaryConfig::Display::Absolute: return Normalization::absolute();
            case TimeVaryConfig::Display::InvariantPeak:
                return Normalization::against(invariant_peak);
            case TimeVaryConfig::Display::PerHarmonic: return Normalization::self_peak();
        }
        return Normalization::absolute();
    };

    out.emit("invariant.csv", field_map_to_text(invariant, display_norm()));

    char buf[256];
    std::snprintf(buf, sizeof buf, "invariant_peak=%.9e\n", invariant_peak);
    summary += buf;

    for (int k : tv.harmonics) {
        const HarmonicPattern hp = harmonic_pattern(cfg.aperture, profile, k, dirs, cfg.ctx);
        std::snprintf(buf, sizeof buf, "harmonic_k%d.csv", k);
        out.emit(buf, field_map_to_text(hp, display_norm()));
        const std::size_t peak = argmax_magnitude(hp.values);
        std::snprintf(buf, sizeof buf,
                      "harmonic_%d_peak_theta_deg=%.6f\nharmonic_%d_peak_phi_deg=%.6f\n"
                      "harmonic_%d_peak_magnitude=%.9e\n",
                      k, dirs[peak].theta * 180.0 / kPi, k, dirs[peak].phi * 180.0 / kPi, k,
                      std::abs(hp.values[peak]));
        summary += buf;
    }

    const std::vector<SpectralLine> lines = spectrum_at_direction(
        cfg.aperture, profile, tv.spectrum_direction, tv.spectrum_k_max, cfg.ctx);
    out.emit("spectrum.csv", spectrum_to_text(lines, Normalization::absolute()));
    for (const SpectralLine& l : lines) {
        if (l.harmonic % 2 == 0) continue;
        std::snprintf(buf, sizeof buf, "spectrum_k%+d_magnitude=%.9e\n", l.harmonic,
                      std::abs(l.value));
        summary += buf;
    }
}

void run_bounds(const ScenarioConfig& cfg, std::string& summary) {
    const auto [lower, upper] = fresnel_bounds(cfg.aperture, cfg.ctx);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "aperture_size_m=%.6f\nwavelength_m=%.9e\nfresnel_lower_m=%.6f\n"
                  "fresnel_upper_m=%.6f\n",
                  cfg.aperture.aperture_size(), cfg.ctx.wavelength(), lower, upper);
    summary += buf;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir) {
    config.ctx.validate();
    config.aperture.validate();
    const bool needs_tag = config.kind == ScenarioKind::Steer ||
                           config.kind == ScenarioKind::Focus ||
                           config.kind == ScenarioKind::Modulate;
    if (needs_tag && !config.tag)
        throw std::invalid_argument("scenario requires a tag source model");

    ScenarioResult result;
    std::filesystem::create_directories(out_dir);
    Emitter out{out_dir, &result};

    std::string summary;
    char buf[256];
    std::snprintf(buf, sizeof buf, "scenario=%s\nfrequency_hz=%.6f\nseed=%llu\n",
                  to_string(config.kind), config.ctx.frequency,
                  static_cast<unsigned long long>(config.seed));
    summary += buf;

    switch (config.kind) {
        case ScenarioKind::Steer: run_steer(config, out, summary); break;
        case ScenarioKind::Focus: run_focus(config, out, summary); break;
        case ScenarioKind::Modulate: run_modulate(config, out, result, summary); break;
        case ScenarioKind::TimeVary: run_timevary(config, out, summary); break;
        case ScenarioKind::Bounds: run_bounds(config, summary); break;
    }

    out.emit("summary.txt", summary);
    result.summary = std::move(summary);
    return result;
}

} // namespace irsim
