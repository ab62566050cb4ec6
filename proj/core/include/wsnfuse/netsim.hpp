#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnfuse/energy.hpp"

namespace wsnfuse {

using NodeId = int;

enum class PacketKind { ContextFlood, AgentMigration, FusedImage, Control };
const char* to_string(PacketKind kind);

struct Packet {
    std::uint64_t seq = 0;
    PacketKind kind = PacketKind::Control;
    std::uint64_t payload_bytes = 0;
    NodeId src = -1;
    NodeId dst = -1;
    int hop_count = 0;
};

enum class NodeStatus { Active, Inactive };

struct DutySchedule {
    double listen_ms = 60.0;
    double sleep_ms = 60.0;
    double phase_ms = 0.0;
    double period() const { return listen_ms + sleep_ms; }
};

struct Node {
    NodeId id = -1;
    double x = 0.0, y = 0.0;
    NodeStatus status = NodeStatus::Inactive;
    bool is_sink = false;
    EnergyState energy;
    DutySchedule duty;

    bool alive() const { return is_sink || !energy.dead(); }
};

struct TopologyParams {
    double area_a = 100.0;          // meters, x extent
    double area_b = 200.0;          // meters, y extent
    int num = 5;                    // node count including the sink
    double comm_radius_m = 10.0;
    double net_bw_bps = 4e6;
    double beta = 3.5;              // free-space propagation exponent
    double tx_power_mw = 100.0;
    double rx_threshold_mw = 0.0;   // 0 = derived from comm radius
    double sink_x = 0.0, sink_y = 0.0;
    double duty_listen_ms = 60.0;
    double duty_sleep_ms = 60.0;
    double initial_battery_mv = 90.0;
};

struct NetworkTopology {
    TopologyParams params;
    std::vector<Node> nodes;  // nodes[0] is the sink
    NodeId sink_id = 0;

    const Node& node(NodeId id) const;
    Node& node(NodeId id);
};

// Uniform-random placement from a seeded generator; the sink sits at the
// configured position. Duty-cycle phases are shared per connected
// component (the lowest node id in the component sets the phase), the
// S-MAC virtual-cluster rule.
NetworkTopology build_topology(const TopologyParams& params, std::uint64_t seed);

// Geometric connectivity: Euclidean distance <= r (boundary inclusive) and
// received power tx/d^beta above the receive threshold. With the default
// threshold the power test agrees exactly with the radius test.
bool in_range(const NetworkTopology& topo, NodeId i, NodeId j);
double link_power_mw(const NetworkTopology& topo, NodeId i, NodeId j);

// Duty-cycle test; the sink is always awake.
bool is_awake(const Node& node, double at_ms);
// First instant >= at_ms at which the node listens.
double next_awake_ms(const Node& node, double at_ms);

struct RoutingError : std::runtime_error {
    NodeId stuck_node;
    RoutingError(NodeId stuck, const std::string& msg)
        : std::runtime_error(msg), stuck_node(stuck) {}
};

// Greedy geographic forwarding: every hop moves strictly closer to the
// destination or a RoutingError carrying the stuck node is thrown.
std::vector<NodeId> geo_route(const NetworkTopology& topo, NodeId from, NodeId to);

struct HopLedger {
    NodeId from = -1, to = -1;
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_sleep = 0;
    std::uint64_t dropped_loss = 0;
};

struct TransmissionRecord {
    std::uint64_t packets_sent = 0;       // payload packets injected (m_al)
    std::uint64_t packets_received = 0;   // payload packets at the far end
    int hops = 0;                         // hc
    std::uint64_t packets_per_payload = 0;
    std::uint64_t t_load = 0;             // m_al * hc
    double latency_ms = 0.0;
    double start_ms = 0.0;
    double end_ms = 0.0;
    std::vector<HopLedger> per_hop;
};

struct FloodReport {
    std::map<NodeId, int> hops;          // first-reception hop count, origin = 0
    std::map<NodeId, double> arrival_ms;
    std::map<NodeId, NodeId> parent;     // reception tree, for path recovery
    std::uint64_t transmissions = 0;     // broadcasts performed
    std::uint64_t copies_sent = 0;       // per-neighbor addressed copies
    std::uint64_t copies_received = 0;
    std::uint64_t dropped_sleep = 0;
    std::uint64_t dropped_loss = 0;
    bool sink_reached = false;
    double sink_arrival_ms = 0.0;

    // Path origin -> id from the reception tree; empty when unreached.
    std::vector<NodeId> path_to(NodeId id, NodeId origin) const;
};

struct LossPolicy {
    double prob = 0.0;                  // per-copy Bernoulli loss
    std::vector<std::uint8_t> script;   // scripted outcomes override prob
    std::size_t cursor = 0;

    bool drop(std::mt19937_64& rng);
};

struct TraceLine {
    double t_ms = 0.0;
    std::string event_kind;
    NodeId src = -1, dst = -1;
    std::uint64_t bytes = 0;
    std::string outcome;
};

struct PacketCounters {
    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    std::uint64_t dropped_sleep = 0;
    std::uint64_t dropped_loss = 0;
};

// Deterministic discrete-event core. One instance owns all mutable state
// and must be driven from a single thread; independent instances can run
// in parallel.
class Simulator {
public:
    Simulator(NetworkTopology topo, std::uint64_t seed);

    double now_ms() const { return now_ms_; }
    NetworkTopology& topology() { return topo_; }
    const NetworkTopology& topology() const { return topo_; }

    void schedule(double at_ms, std::function<void(Simulator&)> fn);
    // Runs every event with time <= until_ms in (time, insertion) order and
    // moves the clock to until_ms. until_ms may not precede the clock.
    int advance(double until_ms);

    // Broadcast propagation with once-per-(origin, seq) forwarding.
    // Transmissions serialize on the shared channel; receivers must be
    // listening at the arrival instant. The origin transmits at its next
    // listen window; forwarders relay as soon as the channel frees.
    FloodReport flood(NodeId origin, const Packet& packet, double at_ms);

    // Store-and-forward unicast along the path. The payload splits into
    // ceil(payload/packet_payload_bytes) packets; each hop starts at the
    // receiver's next listen window and packets whose arrival falls into a
    // sleep interval are lost, as are scripted/Bernoulli losses.
    TransmissionRecord transmit(const std::vector<NodeId>& path,
                                std::uint64_t payload_bytes, PacketKind kind,
                                double at_ms);

    LossPolicy& loss() { return loss_; }
    std::uint64_t next_seq() { return seq_++; }
    std::uint64_t packet_payload_bytes = 1024;
    double per_hop_overhead_ms = 4.0;

    const PacketCounters& counters(PacketKind kind) const;
    PacketCounters total_counters() const;
    const std::vector<TraceLine>& trace() const { return trace_; }
    void trace_event(double t_ms, const std::string& kind, NodeId src, NodeId dst,
                     std::uint64_t bytes, const std::string& outcome);

    // Invoked once per radio transmission with the transmitting node; the
    // scenario layer hooks battery debits here.
    std::function<void(NodeId, PacketKind, double)> on_transmit;

    double channel_slot_ms(std::uint64_t bytes) const;

private:
    struct Event {
        double t;
        std::uint64_t seq;
        std::function<void(Simulator&)> fn;
        bool operator>(const Event& o) const {
            return t != o.t ? t > o.t : seq > o.seq;
        }
    };

    enum class CopyOutcome { Rx, DropSleep, DropLoss };
    CopyOutcome copy_delivered(NodeId to, double arrival_ms, PacketKind kind,
                               std::uint64_t bytes, NodeId from, FloodReport* report);

    NetworkTopology topo_;
    double now_ms_ = 0.0;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    std::uint64_t event_seq_ = 0;
    std::uint64_t seq_ = 1;
    std::mt19937_64 rng_;
    double channel_free_ms_ = 0.0;
    LossPolicy loss_;
    std::vector<TraceLine> trace_;
    std::map<PacketKind, PacketCounters> counters_;
};

// Tab-separated event trace, one line per event.
void write_trace(const std::vector<TraceLine>& trace, const std::string& path);

}  // namespace wsnfuse
