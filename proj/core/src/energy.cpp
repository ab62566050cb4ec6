#include "wsnfuse/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsnfuse {

void UsageCostTable::validate() const {
    if (!(cost_mv[0] <= cost_mv[1] && cost_mv[1] <= cost_mv[2]))
        throw std::invalid_argument(
            "usage costs must satisfy day-noncritical <= day-critical <= night");
    if (!(power_mw[0] <= power_mw[1] && power_mw[1] <= power_mw[2]))
        throw std::invalid_argument(
            "usage powers must satisfy day-noncritical <= day-critical <= night");
    for (int c : cost_mv)
        if (c < 0) throw std::invalid_argument("usage cost must be non-negative");
    for (double p : power_mw)
        if (p < 0) throw std::invalid_argument("usage power must be non-negative");
}

DebitOutcome debit(EnergyState& state, UsageClass cls, double at_ms,
                   const UsageCostTable& table) {
    if (state.dead()) throw std::logic_error("debit on exhausted battery");
    const double before = state.battery_mv;
    state.battery_mv = std::max(0.0, before - table.cost(cls));
    state.draw_mw = table.power(cls);
    state.usage_log.push_back(
        {at_ms, cls, table.cost(cls), table.power(cls), state.battery_mv});
    const double low_water = 0.1 * state.initial_mv;
    DebitOutcome out;
    out.low_battery_crossed = before > low_water && state.battery_mv <= low_water &&
                              state.battery_mv > 0.0;
    out.exhausted = state.battery_mv <= 0.0;
    return out;
}

namespace {
constexpr double kMsPerDay = 24.0 * 60.0 * 60.0 * 1000.0;
constexpr double kMsPerMin = 60.0 * 1000.0;
}  // namespace

void solar_recharge(EnergyState& state, double from_ms, double to_ms,
                    const DaylightSchedule& schedule) {
    if (to_ms < from_ms) throw std::invalid_argument("recharge interval reversed");
    if (schedule.rate_mv_per_hour <= 0.0 || to_ms == from_ms) return;
    const double win_a = schedule.day_start_min * kMsPerMin;
    const double win_b = schedule.day_end_min * kMsPerMin;
    double overlap_ms = 0.0;
    // walk whole days; spans are short in practice
    double day0 = std::floor(from_ms / kMsPerDay);
    double day1 = std::floor(to_ms / kMsPerDay);
    for (double d = day0; d <= day1; d += 1.0) {
        const double a = std::max(from_ms, d * kMsPerDay + win_a);
        const double b = std::min(to_ms, d * kMsPerDay + win_b);
        if (b > a) overlap_ms += b - a;
    }
    const double gain = schedule.rate_mv_per_hour * overlap_ms / 3'600'000.0;
    state.battery_mv = std::min(state.initial_mv, state.battery_mv + gain);
}

}  // namespace wsnfuse
