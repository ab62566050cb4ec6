#pragma once

#include <cstdint>
#include <vector>

namespace wsnfuse {

// Usage classes in increasing cost order; validation rejects tables that
// break the ordering.
enum class UsageClass { DayNoncritical = 0, DayCritical = 1, Night = 2 };

struct UsageCostTable {
    int cost_mv[3] = {1, 2, 3};
    double power_mw[3] = {3.1, 9.0, 14.2};

    int cost(UsageClass c) const { return cost_mv[static_cast<int>(c)]; }
    double power(UsageClass c) const { return power_mw[static_cast<int>(c)]; }
    // Throws std::invalid_argument when costs or powers are not
    // non-decreasing across DayNoncritical <= DayCritical <= Night.
    void validate() const;
};

struct UsageEvent {
    double at_ms = 0.0;
    UsageClass cls = UsageClass::DayNoncritical;
    int cost_mv = 0;
    double power_mw = 0.0;
    double battery_after_mv = 0.0;
};

struct EnergyState {
    double battery_mv = 90.0;
    double initial_mv = 90.0;
    double draw_mw = 0.0;  // power of the most recent usage
    std::vector<UsageEvent> usage_log;

    bool dead() const { return battery_mv <= 0.0; }
};

struct DebitOutcome {
    bool low_battery_crossed = false;  // fell through 10% of initial
    bool exhausted = false;            // reached zero: node goes inactive
};

// One usage of the given class. Throws std::logic_error when the node is
// already dead. The battery clamps at zero.
DebitOutcome debit(EnergyState& state, UsageClass cls, double at_ms,
                   const UsageCostTable& table);

struct DaylightSchedule {
    int day_start_min = 6 * 60;    // 06:00
    int day_end_min = 18 * 60;     // 18:00
    double rate_mv_per_hour = 1.0;
};

// Adds rate * (daylight overlap of [from, to)) to the battery, clamped at
// the initial capacity. Times are milliseconds of simulated clock; the
// schedule repeats daily.
void solar_recharge(EnergyState& state, double from_ms, double to_ms,
                    const DaylightSchedule& schedule);

}  // namespace wsnfuse
