#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnfuse/agency.hpp"
#include "wsnfuse/fusion.hpp"
#include "wsnfuse/netsim.hpp"

namespace wsnfuse {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat experiment configuration. Every field has a key of the same name in
// the key = value config file; unknown keys are rejected and every value is
// echoed into output headers.
struct ScenarioConfig {
    // network
    double area_a = 100.0;
    double area_b = 200.0;
    int num = 5;
    double comm_radius_m = 10.0;
    double net_bw_bps = 4e6;
    double propagation_beta = 3.5;
    double tx_power_mw = 100.0;
    double rx_threshold_mw = 0.0;  // 0 = derived from the radius
    double sink_x = 0.0;
    double sink_y = 0.0;
    std::uint64_t packet_payload_bytes = 1024;
    double per_hop_overhead_ms = 4.0;
    double duty_listen_ms = 60.0;
    double duty_sleep_ms = 60.0;
    double loss_prob = -1.0;  // < 0 = (100 - th_pct) / 500

    // energy
    double node_batt_mv = 90.0;
    bool solar_enabled = true;
    double solar_rate_mv_per_hour = 1.0;
    std::string daylight_start = "06:00";
    std::string daylight_end = "18:00";
    int cost_day_noncritical_mv = 1;
    int cost_day_critical_mv = 2;
    int cost_night_mv = 3;
    double power_day_noncritical_mw = 3.1;
    double power_day_critical_mw = 9.0;
    double power_night_mw = 14.2;

    // agency
    double th_pct = 60.0;
    double t_th_pct = 60.0;
    std::string activity_rule = "entropy_diff";  // or entropy_ratio
    std::string critical_match_mode = "exact";   // or tolerance
    double critical_match_tau = 4.0;
    std::string night_start = "19:00";
    std::string night_end = "06:00";
    std::uint64_t f_code_bytes = 4096;
    double proc_ms_per_pixel_low = 0.0005;
    double proc_ms_per_pixel_high = 0.002;

    // fusion profiles
    std::string low_basis = "haar";
    int low_levels = 1;
    int low_bits = 8;
    int low_window = 3;
    std::string high_basis = "db4";
    int high_levels = 3;
    int high_bits = 16;
    int high_window = 3;
    double fusion_factor = 1.0;
    std::string fusion_mode = "wavelet";  // or additive

    // experiment
    std::string sensing_schedule = "08:00,11:30,17:00,19:00";
    std::string critical_time = "11:30";  // empty = no critical event
    std::string feed_mode = "synthetic";  // or directory
    std::string feed_dir;
    int image_width = 32;
    int image_height = 32;
    int image_bit_depth = 8;
    std::uint64_t seed = 7;

    // Derived views -------------------------------------------------------
    TopologyParams topology_params() const;
    AgencyParams agency_params() const;
    UsageCostTable cost_table() const;
    DaylightSchedule daylight_schedule() const;
    FusionProfile low_profile() const;
    FusionProfile high_profile() const;
    double effective_loss_prob() const;
    std::vector<double> sensing_times_ms() const;
    // sensing time of the critical event, negative when disabled
    double critical_time_ms() const;

    // Throws ConfigError naming every violated invariant.
    void validate() const;
};

// "HH:MM" -> minutes since midnight; throws ConfigError on bad syntax.
int parse_hhmm(const std::string& text);

// key = value text, UTF-8, '#' comments; unknown keys are errors. Missing
// keys keep their defaults.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Canonical "key = value" lines covering every field, echoed into output
// headers; order is fixed.
std::vector<std::string> echo_config(const ScenarioConfig& cfg);
// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& cfg);

// Assigns a numeric axis field for sweeps. "image_size" sets width and
// height together. Unknown names throw ConfigError.
void set_axis_value(ScenarioConfig& cfg, const std::string& axis, double value);
bool is_sweep_axis(const std::string& axis);

}  // namespace wsnfuse
