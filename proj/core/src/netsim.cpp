#include "wsnfuse/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace wsnfuse {

const char* to_string(PacketKind kind) {
    switch (kind) {
        case PacketKind::ContextFlood: return "context-flood";
        case PacketKind::AgentMigration: return "agent-migration";
        case PacketKind::FusedImage: return "fused-image";
        case PacketKind::Control: return "control";
    }
    return "?";
}

const Node& NetworkTopology::node(NodeId id) const {
    if (id < 0 || id >= static_cast<NodeId>(nodes.size()))
        throw std::invalid_argument("unknown node id " + std::to_string(id));
    return nodes[static_cast<std::size_t>(id)];
}

Node& NetworkTopology::node(NodeId id) {
    return const_cast<Node&>(static_cast<const NetworkTopology&>(*this).node(id));
}

namespace {

// Platform-stable uniform double in [0, 1).
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double dist(const Node& a, const Node& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

NetworkTopology build_topology(const TopologyParams& params, std::uint64_t seed) {
    if (params.num < 2) throw std::invalid_argument("topology needs at least 2 nodes");
    if (params.area_a <= 0 || params.area_b <= 0)
        throw std::invalid_argument("area must be positive");
    if (params.comm_radius_m <= 0) throw std::invalid_argument("radius must be positive");
    if (params.beta <= 0) throw std::invalid_argument("beta must be positive");
    if (params.duty_listen_ms <= 0)
        throw std::invalid_argument("duty listen interval must be positive");
    if (params.duty_sleep_ms < 0)
        throw std::invalid_argument("duty sleep interval must be non-negative");

    NetworkTopology topo;
    topo.params = params;
    if (topo.params.rx_threshold_mw <= 0.0)
        topo.params.rx_threshold_mw =
            params.tx_power_mw / std::pow(params.comm_radius_m, params.beta);

    std::mt19937_64 rng(seed);
    topo.nodes.resize(static_cast<std::size_t>(params.num));
    for (int i = 0; i < params.num; ++i) {
        Node& n = topo.nodes[static_cast<std::size_t>(i)];
        n.id = i;
        n.energy.battery_mv = params.initial_battery_mv;
        n.energy.initial_mv = params.initial_battery_mv;
        n.duty = {params.duty_listen_ms, params.duty_sleep_ms, 0.0};
        if (i == 0) {
            n.is_sink = true;
            n.x = params.sink_x;
            n.y = params.sink_y;
        } else {
            n.x = uniform01(rng) * params.area_a;
            n.y = uniform01(rng) * params.area_b;
        }
    }

    // Virtual clusters: connected components over in-range links share the
    // duty phase seeded by their lowest node id.
    std::vector<int> comp(topo.nodes.size(), -1);
    for (std::size_t i = 0; i < topo.nodes.size(); ++i) {
        if (comp[i] != -1) continue;
        std::vector<std::size_t> stack{i};
        comp[i] = static_cast<int>(i);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < topo.nodes.size(); ++v) {
                if (comp[v] != -1 || u == v) continue;
                if (in_range(topo, static_cast<NodeId>(u), static_cast<NodeId>(v))) {
                    comp[v] = comp[i];
                    stack.push_back(v);
                }
            }
        }
    }
    const double period = params.duty_listen_ms + params.duty_sleep_ms;
    for (std::size_t i = 0; i < topo.nodes.size(); ++i) {
        const double lowest = static_cast<double>(comp[i]);
        topo.nodes[i].duty.phase_ms =
            period > 0 ? std::fmod(lowest * params.duty_listen_ms, period) : 0.0;
    }
    return topo;
}

bool in_range(const NetworkTopology& topo, NodeId i, NodeId j) {
    const Node& a = topo.node(i);
    const Node& b = topo.node(j);
    const double d = dist(a, b);
    if (d > topo.params.comm_radius_m) return false;
    return link_power_mw(topo, i, j) >= topo.params.rx_threshold_mw - 1e-12;
}

double link_power_mw(const NetworkTopology& topo, NodeId i, NodeId j) {
    const double d = dist(topo.node(i), topo.node(j));
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return topo.params.tx_power_mw / std::pow(d, topo.params.beta);
}

bool is_awake(const Node& node, double at_ms) {
    if (node.is_sink) return true;
    if (!node.alive()) return false;
    const double period = node.duty.period();
    if (node.duty.sleep_ms <= 0.0 || period <= 0.0) return true;
    double ph = std::fmod(at_ms - node.duty.phase_ms, period);
    if (ph < 0) ph += period;
    return ph < node.duty.listen_ms;
}

double next_awake_ms(const Node& node, double at_ms) {
    if (is_awake(node, at_ms)) return at_ms;
    const double period = node.duty.period();
    double ph = std::fmod(at_ms - node.duty.phase_ms, period);
    if (ph < 0) ph += period;
    return at_ms + (period - ph);
}

std::vector<NodeId> geo_route(const NetworkTopology& topo, NodeId from, NodeId to) {
    const Node& dst = topo.node(to);
    std::vector<NodeId> path{from};
    if (from == to) return path;
    NodeId cur = from;
    while (cur != to) {
        const Node& here = topo.node(cur);
        const double d_here = dist(here, dst);
        NodeId best = -1;
        double best_d = d_here;
        for (const Node& cand : topo.nodes) {
            if (cand.id == cur || !cand.alive()) continue;
            if (!in_range(topo, cur, cand.id)) continue;
            const double d = dist(cand, dst);
            if (d < best_d - 1e-12 || (cand.id == to && d <= best_d)) {
                best_d = d;
                best = cand.id;
            }
        }
        if (best == -1)
            throw RoutingError(cur, "greedy routing stuck at node " + std::to_string(cur));
        path.push_back(best);
        cur = best;
        if (path.size() > topo.nodes.size())
            throw RoutingError(cur, "routing loop detected");
    }
    return path;
}

std::vector<NodeId> FloodReport::path_to(NodeId id, NodeId origin) const {
    std::vector<NodeId> rev;
    if (!hops.count(id)) return rev;
    NodeId cur = id;
    rev.push_back(cur);
    while (cur != origin) {
        auto it = parent.find(cur);
        if (it == parent.end()) return {};
        cur = it->second;
        rev.push_back(cur);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

bool LossPolicy::drop(std::mt19937_64& rng) {
    if (cursor < script.size()) return script[cursor++] != 0;
    if (prob <= 0.0) return false;
    return uniform01(rng) < prob;
}

Simulator::Simulator(NetworkTopology topo, std::uint64_t seed)
    : topo_(std::move(topo)), rng_(seed) {}

void Simulator::schedule(double at_ms, std::function<void(Simulator&)> fn) {
    if (at_ms < now_ms_) throw std::invalid_argument("cannot schedule in the past");
    events_.push({at_ms, event_seq_++, std::move(fn)});
}

int Simulator::advance(double until_ms) {
    if (until_ms < now_ms_) throw std::invalid_argument("advance target precedes clock");
    int processed = 0;
    while (!events_.empty() && events_.top().t <= until_ms) {
        Event ev = events_.top();
        events_.pop();
        now_ms_ = ev.t;
        ev.fn(*this);
        ++processed;
    }
    now_ms_ = until_ms;
    return processed;
}

double Simulator::channel_slot_ms(std::uint64_t bytes) const {
    return static_cast<double>(bytes) * 8.0 / topo_.params.net_bw_bps * 1000.0 +
           per_hop_overhead_ms;
}

void Simulator::trace_event(double t_ms, const std::string& kind, NodeId src, NodeId dst,
                            std::uint64_t bytes, const std::string& outcome) {
    trace_.push_back({t_ms, kind, src, dst, bytes, outcome});
}

const PacketCounters& Simulator::counters(PacketKind kind) const {
    static const PacketCounters empty;
    auto it = counters_.find(kind);
    return it == counters_.end() ? empty : it->second;
}

PacketCounters Simulator::total_counters() const {
    PacketCounters out;
    for (const auto& [kind, c] : counters_) {
        out.sent += c.sent;
        out.received += c.received;
        out.dropped_sleep += c.dropped_sleep;
        out.dropped_loss += c.dropped_loss;
    }
    return out;
}

Simulator::CopyOutcome Simulator::copy_delivered(NodeId to, double arrival_ms,
                                                 PacketKind kind, std::uint64_t bytes,
                                                 NodeId from, FloodReport* report) {
    PacketCounters& c = counters_[kind];
    ++c.sent;
    if (report) ++report->copies_sent;
    const Node& recv = topo_.node(to);
    if (!recv.alive() || !is_awake(recv, arrival_ms)) {
        ++c.dropped_sleep;
        if (report) ++report->dropped_sleep;
        trace_event(arrival_ms, to_string(kind), from, to, bytes, "drop-sleep");
        return CopyOutcome::DropSleep;
    }
    if (loss_.drop(rng_)) {
        ++c.dropped_loss;
        if (report) ++report->dropped_loss;
        trace_event(arrival_ms, to_string(kind), from, to, bytes, "drop-loss");
        return CopyOutcome::DropLoss;
    }
    ++c.received;
    if (report) ++report->copies_received;
    trace_event(arrival_ms, to_string(kind), from, to, bytes, "rx");
    return CopyOutcome::Rx;
}

FloodReport Simulator::flood(NodeId origin, const Packet& packet, double at_ms) {
    const Node& src = topo_.node(origin);
    FloodReport report;
    if (!src.alive()) return report;

    // pending forwards: (ready time, node); the min-heap with id tie-break
    // together with channel serialization makes the order reproducible.
    using Pend = std::pair<double, NodeId>;
    std::priority_queue<Pend, std::vector<Pend>, std::greater<>> pending;
    std::set<NodeId> forwarded;

    const double start = next_awake_ms(src, at_ms);
    pending.push({start, origin});
    report.hops[origin] = 0;
    report.arrival_ms[origin] = start;
    trace_event(at_ms, "flood-start", origin, -1, packet.payload_bytes,
                "seq=" + std::to_string(packet.seq));

    while (!pending.empty()) {
        auto [ready, u] = pending.top();
        pending.pop();
        if (forwarded.count(u)) continue;  // (origin, seq) already relayed
        forwarded.insert(u);
        const double tb = std::max(ready, channel_free_ms_);
        const double dur = channel_slot_ms(packet.payload_bytes);
        channel_free_ms_ = tb + dur;
        const double arrival = tb + dur;
        ++report.transmissions;
        if (on_transmit) on_transmit(u, packet.kind, tb);
        for (const Node& v : topo_.nodes) {
            if (v.id == u || !in_range(topo_, u, v.id)) continue;
            const bool ok = copy_delivered(v.id, arrival, packet.kind,
                                           packet.payload_bytes, u,
                                           &report) == CopyOutcome::Rx;
            if (ok && !report.hops.count(v.id)) {
                report.hops[v.id] = report.hops[u] + 1;
                report.arrival_ms[v.id] = arrival;
                report.parent[v.id] = u;
                pending.push({arrival, v.id});
            }
        }
    }
    if (report.hops.count(topo_.sink_id)) {
        report.sink_reached = true;
        report.sink_arrival_ms = report.arrival_ms[topo_.sink_id];
    }
    return report;
}

TransmissionRecord Simulator::transmit(const std::vector<NodeId>& path,
                                       std::uint64_t payload_bytes, PacketKind kind,
                                       double at_ms) {
    if (path.empty()) throw std::invalid_argument("empty path");
    if (payload_bytes == 0) throw std::invalid_argument("payload must be non-empty");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!in_range(topo_, path[i], path[i + 1]))
            throw std::invalid_argument("broken path: node " + std::to_string(path[i]) +
                                        " cannot reach " + std::to_string(path[i + 1]));

    TransmissionRecord rec;
    rec.packets_per_payload =
        (payload_bytes + packet_payload_bytes - 1) / packet_payload_bytes;
    rec.packets_sent = rec.packets_per_payload;
    rec.hops = static_cast<int>(path.size()) - 1;
    rec.t_load = rec.packets_per_payload * static_cast<std::uint64_t>(rec.hops);
    rec.start_ms = at_ms;

    std::uint64_t alive = rec.packets_per_payload;
    double t = at_ms;
    const double slot = channel_slot_ms(packet_payload_bytes);
    for (std::size_t h = 0; h + 1 < path.size(); ++h) {
        const NodeId u = path[h];
        const NodeId v = path[h + 1];
        HopLedger ledger{u, v, alive, 0, 0, 0};
        if (alive > 0) {
            // hop starts when the channel frees and the receiver listens
            double hop_start = std::max(t, channel_free_ms_);
            hop_start = next_awake_ms(topo_.node(v), hop_start);
            for (std::uint64_t p = 0; p < alive; ++p) {
                const double arrival = hop_start + static_cast<double>(p + 1) * slot;
                if (on_transmit) on_transmit(u, kind, arrival - slot);
                switch (copy_delivered(v, arrival, kind, packet_payload_bytes, u, nullptr)) {
                    case CopyOutcome::Rx: ++ledger.delivered; break;
                    case CopyOutcome::DropSleep: ++ledger.dropped_sleep; break;
                    case CopyOutcome::DropLoss: ++ledger.dropped_loss; break;
                }
            }
            channel_free_ms_ = hop_start + static_cast<double>(alive) * slot;
            t = channel_free_ms_;
            alive = ledger.delivered;
        }
        rec.per_hop.push_back(ledger);
    }
    rec.packets_received = alive;
    rec.end_ms = t;
    rec.latency_ms = t - at_ms;
    return rec;
}

void write_trace(const std::vector<TraceLine>& trace, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write trace: " + path);
    char buf[64];
    for (const TraceLine& l : trace) {
        std::snprintf(buf, sizeof(buf), "%.3f", l.t_ms);
        os << buf << '\t' << l.event_kind << '\t' << l.src << '\t' << l.dst << '\t'
           << l.bytes << '\t' << l.outcome << '\n';
    }
}

}  // namespace wsnfuse
