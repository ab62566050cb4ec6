#include "wsnfuse/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace wsnfuse {

namespace {

enum class FieldKind { Int, U64, Double, Bool, String };

struct FieldSpec {
    const char* name;
    FieldKind kind;
    std::function<std::string(const ScenarioConfig&)> get;
    std::function<void(ScenarioConfig&, const std::string&)> set;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for " + key + ": '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for " + key + ": '" + v + "'");
    }
}

#define F_DOUBLE(field)                                                      \
    FieldSpec {                                                              \
        #field, FieldKind::Double,                                           \
            [](const ScenarioConfig& c) { return fmt_double(c.field); },     \
            [](ScenarioConfig& c, const std::string& v) {                    \
                c.field = to_double(#field, v);                              \
            }                                                                \
    }
#define F_INT(field)                                                         \
    FieldSpec {                                                              \
        #field, FieldKind::Int,                                              \
            [](const ScenarioConfig& c) { return std::to_string(c.field); }, \
            [](ScenarioConfig& c, const std::string& v) {                    \
                c.field = static_cast<int>(to_int(#field, v));               \
            }                                                                \
    }
#define F_U64(field)                                                         \
    FieldSpec {                                                              \
        #field, FieldKind::U64,                                              \
            [](const ScenarioConfig& c) { return std::to_string(c.field); }, \
            [](ScenarioConfig& c, const std::string& v) {                    \
                c.field = static_cast<std::uint64_t>(to_int(#field, v));     \
            }                                                                \
    }
#define F_BOOL(field)                                                            \
    FieldSpec {                                                                  \
        #field, FieldKind::Bool,                                                 \
            [](const ScenarioConfig& c) {                                        \
                return std::string(c.field ? "true" : "false");                  \
            },                                                                   \
            [](ScenarioConfig& c, const std::string& v) {                        \
                if (v == "true" || v == "1")                                     \
                    c.field = true;                                              \
                else if (v == "false" || v == "0")                               \
                    c.field = false;                                             \
                else                                                             \
                    throw ConfigError("invalid boolean for " #field ": '" + v + \
                                      "'");                                      \
            }                                                                    \
    }
#define F_STRING(field)                                                \
    FieldSpec {                                                        \
        #field, FieldKind::String,                                     \
            [](const ScenarioConfig& c) { return c.field; },           \
            [](ScenarioConfig& c, const std::string& v) { c.field = v; } \
    }

const std::vector<FieldSpec>& field_specs() {
    static const std::vector<FieldSpec> specs = {
        F_DOUBLE(area_a),
        F_DOUBLE(area_b),
        F_INT(num),
        F_DOUBLE(comm_radius_m),
        F_DOUBLE(net_bw_bps),
        F_DOUBLE(propagation_beta),
        F_DOUBLE(tx_power_mw),
        F_DOUBLE(rx_threshold_mw),
        F_DOUBLE(sink_x),
        F_DOUBLE(sink_y),
        F_U64(packet_payload_bytes),
        F_DOUBLE(per_hop_overhead_ms),
        F_DOUBLE(duty_listen_ms),
        F_DOUBLE(duty_sleep_ms),
        F_DOUBLE(loss_prob),
        F_DOUBLE(node_batt_mv),
        F_BOOL(solar_enabled),
        F_DOUBLE(solar_rate_mv_per_hour),
        F_STRING(daylight_start),
        F_STRING(daylight_end),
        F_INT(cost_day_noncritical_mv),
        F_INT(cost_day_critical_mv),
        F_INT(cost_night_mv),
        F_DOUBLE(power_day_noncritical_mw),
        F_DOUBLE(power_day_critical_mw),
        F_DOUBLE(power_night_mw),
        F_DOUBLE(th_pct),
        F_DOUBLE(t_th_pct),
        F_STRING(activity_rule),
        F_STRING(critical_match_mode),
        F_DOUBLE(critical_match_tau),
        F_STRING(night_start),
        F_STRING(night_end),
        F_U64(f_code_bytes),
        F_DOUBLE(proc_ms_per_pixel_low),
        F_DOUBLE(proc_ms_per_pixel_high),
        F_STRING(low_basis),
        F_INT(low_levels),
        F_INT(low_bits),
        F_INT(low_window),
        F_STRING(high_basis),
        F_INT(high_levels),
        F_INT(high_bits),
        F_INT(high_window),
        F_DOUBLE(fusion_factor),
        F_STRING(fusion_mode),
        F_STRING(sensing_schedule),
        F_STRING(critical_time),
        F_STRING(feed_mode),
        F_STRING(feed_dir),
        F_INT(image_width),
        F_INT(image_height),
        F_INT(image_bit_depth),
        F_U64(seed),
    };
    return specs;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

int parse_hhmm(const std::string& text) {
    int h = 0, m = 0;
    char colon = 0;
    std::istringstream is(text);
    if (!(is >> h >> colon >> m) || colon != ':' || h < 0 || h > 23 || m < 0 || m > 59)
        throw ConfigError("invalid HH:MM time: '" + text + "'");
    return h * 60 + m;
}

TopologyParams ScenarioConfig::topology_params() const {
    TopologyParams p;
    p.area_a = area_a;
    p.area_b = area_b;
    p.num = num;
    p.comm_radius_m = comm_radius_m;
    p.net_bw_bps = net_bw_bps;
    p.beta = propagation_beta;
    p.tx_power_mw = tx_power_mw;
    p.rx_threshold_mw = rx_threshold_mw;
    p.sink_x = sink_x;
    p.sink_y = sink_y;
    p.duty_listen_ms = duty_listen_ms;
    p.duty_sleep_ms = duty_sleep_ms;
    p.initial_battery_mv = node_batt_mv;
    return p;
}

UsageCostTable ScenarioConfig::cost_table() const {
    UsageCostTable t;
    t.cost_mv[0] = cost_day_noncritical_mv;
    t.cost_mv[1] = cost_day_critical_mv;
    t.cost_mv[2] = cost_night_mv;
    t.power_mw[0] = power_day_noncritical_mw;
    t.power_mw[1] = power_day_critical_mw;
    t.power_mw[2] = power_night_mw;
    return t;
}

DaylightSchedule ScenarioConfig::daylight_schedule() const {
    return {parse_hhmm(daylight_start), parse_hhmm(daylight_end), solar_rate_mv_per_hour};
}

FusionProfile ScenarioConfig::low_profile() const {
    FusionProfile p;
    p.resolution_class = ResolutionClass::Low;
    p.basis = low_basis;
    p.levels = low_levels;
    p.output_bit_depth = low_bits;
    p.window = low_window;
    p.fusion_factor = fusion_factor;
    p.mode = fusion_mode == "additive" ? FusionMode::Additive : FusionMode::Wavelet;
    return p;
}

FusionProfile ScenarioConfig::high_profile() const {
    FusionProfile p;
    p.resolution_class = ResolutionClass::High;
    p.basis = high_basis;
    p.levels = high_levels;
    p.output_bit_depth = high_bits;
    p.window = high_window;
    p.fusion_factor = fusion_factor;
    p.mode = fusion_mode == "additive" ? FusionMode::Additive : FusionMode::Wavelet;
    return p;
}

AgencyParams ScenarioConfig::agency_params() const {
    AgencyParams a;
    a.th_pct = th_pct;
    a.t_th_pct = t_th_pct;
    a.rule = activity_rule == "entropy_ratio" ? ActivityRule::EntropyRatio
                                              : ActivityRule::EntropyOfDifference;
    a.match_mode = critical_match_mode == "tolerance" ? CriticalMatchMode::Tolerance
                                                      : CriticalMatchMode::Exact;
    a.match_tau = critical_match_tau;
    a.night_start_min = parse_hhmm(night_start);
    a.night_end_min = parse_hhmm(night_end);
    a.low_profile = low_profile();
    a.high_profile = high_profile();
    a.f_code_bytes = f_code_bytes;
    a.proc_ms_per_pixel_low = proc_ms_per_pixel_low;
    a.proc_ms_per_pixel_high = proc_ms_per_pixel_high;
    a.costs = cost_table();
    return a;
}

double ScenarioConfig::effective_loss_prob() const {
    return loss_prob >= 0.0 ? loss_prob : (100.0 - th_pct) / 500.0;
}

std::vector<double> ScenarioConfig::sensing_times_ms() const {
    std::vector<double> out;
    std::stringstream ss(sensing_schedule);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_hhmm(item) * 60000.0);
    }
    return out;
}

double ScenarioConfig::critical_time_ms() const {
    const std::string t = trim(critical_time);
    if (t.empty()) return -1.0;
    return parse_hhmm(t) * 60000.0;
}

void ScenarioConfig::validate() const {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    check(area_a > 0 && area_b > 0, "area_a/area_b must be positive");
    check(num >= 2, "num must be >= 2");
    check(comm_radius_m > 0, "comm_radius_m must be positive");
    check(net_bw_bps > 0, "net_bw_bps must be positive");
    check(propagation_beta > 0, "propagation_beta must be positive");
    check(tx_power_mw > 0, "tx_power_mw must be positive");
    check(packet_payload_bytes > 0, "packet_payload_bytes must be positive");
    check(per_hop_overhead_ms >= 0, "per_hop_overhead_ms must be non-negative");
    check(duty_listen_ms > 0, "duty_listen_ms must be positive");
    check(duty_sleep_ms >= 0, "duty_sleep_ms must be non-negative");
    check(loss_prob <= 1.0, "loss_prob must be <= 1");
    check(node_batt_mv > 0, "node_batt_mv must be positive");
    check(th_pct > 0 && th_pct <= 100, "th_pct must be in (0, 100]");
    check(t_th_pct > 0, "t_th_pct must be positive");
    check(activity_rule == "entropy_diff" || activity_rule == "entropy_ratio",
          "activity_rule must be entropy_diff or entropy_ratio");
    check(critical_match_mode == "exact" || critical_match_mode == "tolerance",
          "critical_match_mode must be exact or tolerance");
    check(critical_match_tau >= 0, "critical_match_tau must be non-negative");
    check(f_code_bytes > 0, "f_code_bytes must be positive");
    check(proc_ms_per_pixel_low >= 0 && proc_ms_per_pixel_high >= 0,
          "processing delays must be non-negative");
    check(fusion_mode == "wavelet" || fusion_mode == "additive",
          "fusion_mode must be wavelet or additive");
    check(feed_mode == "synthetic" || feed_mode == "directory",
          "feed_mode must be synthetic or directory");
    check(feed_mode != "directory" || !feed_dir.empty(),
          "feed_dir required for directory feed");
    check(image_width >= 2 && image_height >= 2, "image dimensions must be >= 2");
    check(image_bit_depth == 8 || image_bit_depth == 12 || image_bit_depth == 16 ||
              image_bit_depth == 24,
          "image_bit_depth must be one of 8/12/16/24");
    for (auto [lv, nm] : {std::pair{low_levels, "low_levels"}, {high_levels, "high_levels"}})
        if (lv < 1 || lv > kMaxDwtLevels) bad.push_back(std::string(nm) + " out of range");
    for (auto [bits, nm] : {std::pair{low_bits, "low_bits"}, {high_bits, "high_bits"}})
        if (bits != 8 && bits != 12 && bits != 16 && bits != 24)
            bad.push_back(std::string(nm) + " must be one of 8/12/16/24");
    for (auto [w, nm] : {std::pair{low_window, "low_window"}, {high_window, "high_window"}})
        if (w < 1 || w % 2 == 0) bad.push_back(std::string(nm) + " must be odd and >= 1");
    const int div = 1 << std::max(low_levels, high_levels);
    check(image_width % div == 0 && image_height % div == 0,
          "image dimensions must be divisible by 2^levels of both profiles");
    try {
        basis_filters(low_basis);
    } catch (const std::exception&) {
        bad.push_back("low_basis unknown: " + low_basis);
    }
    try {
        basis_filters(high_basis);
    } catch (const std::exception&) {
        bad.push_back("high_basis unknown: " + high_basis);
    }
    try {
        cost_table().validate();
    } catch (const std::exception& e) {
        bad.emplace_back(e.what());
    }
    try {
        parse_hhmm(daylight_start);
        parse_hhmm(daylight_end);
        parse_hhmm(night_start);
        parse_hhmm(night_end);
        if (sensing_times_ms().empty()) bad.emplace_back("sensing_schedule is empty");
        critical_time_ms();
    } catch (const std::exception& e) {
        bad.emplace_back(e.what());
    }
    if (!bad.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& b : bad) msg += "\n  - " + b;
        throw ConfigError(msg);
    }
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool found = false;
        for (const FieldSpec& spec : field_specs()) {
            if (key == spec.name) {
                spec.set(cfg, value);
                found = true;
                break;
            }
        }
        if (!found)
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<std::string> echo_config(const ScenarioConfig& cfg) {
    std::vector<std::string> lines;
    lines.reserve(field_specs().size());
    for (const FieldSpec& spec : field_specs())
        lines.push_back(std::string(spec.name) + " = " + spec.get(cfg));
    return lines;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const std::string& line : echo_config(cfg)) {
        for (char c : line) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    }
    return h;
}

void set_axis_value(ScenarioConfig& cfg, const std::string& axis, double value) {
    if (axis == "image_size") {
        cfg.image_width = static_cast<int>(value);
        cfg.image_height = static_cast<int>(value);
        return;
    }
    for (const FieldSpec& spec : field_specs()) {
        if (axis != spec.name) continue;
        switch (spec.kind) {
            case FieldKind::Double:
                spec.set(cfg, fmt_double(value));
                return;
            case FieldKind::Int:
            case FieldKind::U64:
                spec.set(cfg, std::to_string(static_cast<long long>(value)));
                return;
            default:
                throw ConfigError("axis '" + axis + "' is not numeric");
        }
    }
    throw ConfigError("unknown sweep axis: '" + axis + "'");
}

bool is_sweep_axis(const std::string& axis) {
    if (axis == "image_size") return true;
    for (const FieldSpec& spec : field_specs())
        if (axis == spec.name)
            return spec.kind == FieldKind::Double || spec.kind == FieldKind::Int ||
                   spec.kind == FieldKind::U64;
    return false;
}

}  // namespace wsnfuse
