#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wsnfuse/fusion.hpp"
#include "wsnfuse/image.hpp"
#include "wsnfuse/netsim.hpp"

namespace wsnfuse {

enum class ContextKind { GeneralObject, CriticalObject, Night };
const char* to_string(ContextKind kind);

// Night is produced by the sink only; node interpretation yields one of the
// object contexts.
struct ContextRecord {
    ContextKind kind = ContextKind::GeneralObject;
    double sensed_at_ms = 0.0;
    NodeId source_node = -1;
};

struct NodeBlackboard {
    NodeId node_id = -1;
    double x = 0.0, y = 0.0;
    NodeStatus status = NodeStatus::Inactive;
    double battery_mv = 0.0;
    double signal_strength_pct = 0.0;   // entropy ratio P_th, capped at 200
    double signal_strength_bits = 0.0;  // entropy of the difference image
    double power_mw = 0.0;
    std::vector<Image> critical_images;
    std::optional<Image> previous_image;
    std::optional<Image> present_image;
    double bandwidth_required_pct = 0.0;
    std::optional<ContextRecord> context;
};

struct SinkRow {
    NodeId node_id = -1;
    double x = 0.0, y = 0.0;
    NodeStatus status = NodeStatus::Inactive;
    double signal_strength_pct = 0.0;
    double battery_mv = 0.0;
    double power_mw = 0.0;
    double bandwidth_required_pct = 0.0;
    std::optional<ContextRecord> context;
    double updated_at_ms = 0.0;
};

struct SinkBlackboard {
    std::map<NodeId, SinkRow> rows;  // at most one row per node
    double available_bw_bps = 0.0;
};

// Mobile fusing agent: plain state handed from node to node by transmit
// events. clock_ms tracks the agent's position in simulated time.
struct FusingAgent {
    enum class Phase { Dispatched, Returned, Disposed };

    std::uint64_t code_size_bytes = 4096;
    FusionProfile profile;
    ContextKind trigger = ContextKind::GeneralObject;
    std::vector<NodeId> itinerary;
    std::vector<NodeId> reverse_route;
    std::optional<Image> carried_image;
    std::set<NodeId> visited;
    NodeId current_node = -1;  // where the agent's state currently resides
    std::size_t next_index = 0;
    double dispatched_at_ms = 0.0;
    double clock_ms = 0.0;
    Phase phase = Phase::Dispatched;
    std::uint64_t t_load_total = 0;
    std::vector<TransmissionRecord> transfers;
};

// Fig-9 ordering violations (sense -> interpret -> report -> dispatch ->
// visit* -> return) surface as this error.
struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class ActivityRule {
    EntropyOfDifference,  // signal strength above threshold (default)
    EntropyRatio,         // P_th = H1/H2*100 above threshold
};

enum class CriticalMatchMode { Exact, Tolerance };

struct AgencyParams {
    double th_pct = 60.0;    // activity threshold, percent of bit depth
    double t_th_pct = 60.0;  // entropy-ratio threshold, percent
    ActivityRule rule = ActivityRule::EntropyOfDifference;
    CriticalMatchMode match_mode = CriticalMatchMode::Exact;
    double match_tau = 4.0;  // mean-absolute-difference bound, tolerance mode
    int night_start_min = 19 * 60;
    int night_end_min = 6 * 60;
    FusionProfile low_profile = FusionProfile::low_default();
    FusionProfile high_profile = FusionProfile::high_default();
    std::uint64_t f_code_bytes = 4096;
    double proc_ms_per_pixel_low = 0.0005;
    double proc_ms_per_pixel_high = 0.002;
    UsageCostTable costs;
};

struct AgentLogLine {
    double t_ms = 0.0;
    std::string agent_kind;  // CA | NMA | SMA | FA
    std::string action;
    NodeId node_id = -1;
    std::string detail;
};

struct InterpretResult {
    bool active = false;
    std::optional<ContextRecord> context;
    double p_th = 0.0;
    double signal_bits = 0.0;
};

struct ReturnResult {
    bool delivered = false;
    std::optional<Image> fused;
    double fusion_time_ms = 0.0;
    double delivered_at_ms = 0.0;
    std::uint64_t t_load_total = 0;
};

bool in_night_window(double at_ms, int start_min, int end_min);

// The agent layer. Owns the per-node blackboards and the sink blackboard,
// drives energy debits through the simulator's topology, and enforces the
// interaction sequence as a state machine.
class AgencyHost {
public:
    using ImageProvider = std::function<Image(NodeId, double)>;

    AgencyHost(Simulator& sim, AgencyParams params, ImageProvider feed,
               std::vector<Image> critical_templates);

    // -- node agency -------------------------------------------------------
    const NodeBlackboard& ca_sense(NodeId id, double at_ms);
    InterpretResult nma_interpret(NodeId id);
    FloodReport nma_report(NodeId id);

    // -- sink agency -------------------------------------------------------
    // trigger: a node context, or Night for the sink/user-driven request.
    FusingAgent sma_dispatch(ContextKind trigger, double at_ms);
    void fa_visit(FusingAgent& agent, NodeId id);
    ReturnResult fa_return(FusingAgent& agent);

    NodeBlackboard& blackboard(NodeId id);
    SinkBlackboard& sink_blackboard() { return sbb_; }
    const std::vector<AgentLogLine>& log() const { return log_; }
    const AgencyParams& params() const { return params_; }
    UsageClass usage_class(double at_ms, bool critical) const;

private:
    enum class CyclePhase { Idle, Sensed, Interpreted };

    struct NodeState {
        NodeBlackboard bb;
        CyclePhase phase = CyclePhase::Idle;
        bool reportable = false;  // interpreted active, report pending
    };

    void log_line(double t_ms, const char* agent, const std::string& action, NodeId id,
                  const std::string& detail);
    NodeState& state(NodeId id);
    double threshold_bits(int bit_depth) const;
    bool matches_critical(const Image& diff, const NodeBlackboard& bb) const;
    double visit_processing_ms(const FusingAgent& agent, const Image& img) const;

    Simulator& sim_;
    AgencyParams params_;
    ImageProvider feed_;
    std::map<NodeId, NodeState> nodes_;
    SinkBlackboard sbb_;
    std::vector<AgentLogLine> log_;
};

void write_agent_log(const std::vector<AgentLogLine>& log, const std::string& path);

}  // namespace wsnfuse
