#include "wsnfuse/agency.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace wsnfuse {

const char* to_string(ContextKind kind) {
    switch (kind) {
        case ContextKind::GeneralObject: return "C_go";
        case ContextKind::CriticalObject: return "C_co";
        case ContextKind::Night: return "night";
    }
    return "?";
}

bool in_night_window(double at_ms, int start_min, int end_min) {
    const double minute = std::fmod(at_ms / 60000.0, 24.0 * 60.0);
    if (start_min <= end_min) return minute >= start_min && minute < end_min;
    return minute >= start_min || minute < end_min;  // wraps midnight
}

AgencyHost::AgencyHost(Simulator& sim, AgencyParams params, ImageProvider feed,
                       std::vector<Image> critical_templates)
    : sim_(sim), params_(std::move(params)), feed_(std::move(feed)) {
    params_.costs.validate();
    for (const Node& n : sim_.topology().nodes) {
        if (n.is_sink) continue;
        NodeState st;
        st.bb.node_id = n.id;
        st.bb.x = n.x;
        st.bb.y = n.y;
        st.bb.battery_mv = n.energy.battery_mv;
        st.bb.critical_images = critical_templates;
        nodes_.emplace(n.id, std::move(st));
    }
    sbb_.available_bw_bps = sim_.topology().params.net_bw_bps;
}

void AgencyHost::log_line(double t_ms, const char* agent, const std::string& action,
                          NodeId id, const std::string& detail) {
    log_.push_back({t_ms, agent, action, id, detail});
}

AgencyHost::NodeState& AgencyHost::state(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end())
        throw std::invalid_argument("node " + std::to_string(id) + " has no agency");
    return it->second;
}

NodeBlackboard& AgencyHost::blackboard(NodeId id) { return state(id).bb; }

double AgencyHost::threshold_bits(int bit_depth) const {
    // Th is a percentage; the comparable entropy scale is the bit depth.
    return params_.th_pct / 100.0 * bit_depth;
}

UsageClass AgencyHost::usage_class(double at_ms, bool critical) const {
    if (in_night_window(at_ms, params_.night_start_min, params_.night_end_min))
        return UsageClass::Night;
    return critical ? UsageClass::DayCritical : UsageClass::DayNoncritical;
}

const NodeBlackboard& AgencyHost::ca_sense(NodeId id, double at_ms) {
    NodeState& st = state(id);
    Node& node = sim_.topology().node(id);
    if (!node.alive()) throw std::logic_error("ca_sense on a dead node");
    if (st.phase != CyclePhase::Idle)
        throw ProtocolError("ca_sense out of order: interpretation pending");

    st.bb.present_image = feed_(id, at_ms);
    debit(node.energy, usage_class(at_ms, false), at_ms, params_.costs);
    st.bb.battery_mv = node.energy.battery_mv;
    st.bb.power_mw = node.energy.draw_mw;
    st.phase = CyclePhase::Sensed;
    st.reportable = false;
    log_line(at_ms, "CA", "sense", id, "");
    return st.bb;
}

bool AgencyHost::matches_critical(const Image& diff, const NodeBlackboard& bb) const {
    for (const Image& tmpl : bb.critical_images) {
        if (!tmpl.same_shape(diff) || tmpl.bit_depth != diff.bit_depth) continue;
        if (params_.match_mode == CriticalMatchMode::Exact) {
            if (diff.pixels == tmpl.pixels) return true;
        } else {
            double mad = 0.0;
            for (std::size_t i = 0; i < diff.pixel_count(); ++i)
                mad += std::abs(static_cast<double>(diff.pixels[i]) -
                                static_cast<double>(tmpl.pixels[i]));
            if (mad / static_cast<double>(diff.pixel_count()) <= params_.match_tau)
                return true;
        }
    }
    return false;
}

InterpretResult AgencyHost::nma_interpret(NodeId id) {
    NodeState& st = state(id);
    if (st.phase != CyclePhase::Sensed)
        throw ProtocolError("nma_interpret out of order: no fresh sense");
    Node& node = sim_.topology().node(id);
    const double at_ms = sim_.now_ms();
    InterpretResult result;

    if (!st.bb.previous_image) {
        // first cycle: baseline only, node stays inactive
        st.bb.previous_image = std::move(*st.bb.present_image);
        st.bb.present_image.reset();
        st.bb.status = NodeStatus::Inactive;
        node.status = NodeStatus::Inactive;
        st.phase = CyclePhase::Idle;
        log_line(at_ms, "NMA", "interpret", id, "baseline");
        return result;
    }

    const Image& present = *st.bb.present_image;
    const Image& previous = *st.bb.previous_image;
    const double h1 = entropy(present);
    const double h2 = entropy(previous);
    // degenerate constant previous image: ratio capped and flagged
    const double ratio = h2 > 0.0 ? std::min(200.0, h1 / h2 * 100.0) : 200.0;
    const Image diff = difference(present, previous);
    const double bits = entropy(diff);
    st.bb.signal_strength_pct = ratio;
    st.bb.signal_strength_bits = bits;
    result.p_th = ratio;
    result.signal_bits = bits;
    if (h2 <= 0.0) log_line(at_ms, "NMA", "ratio-degenerate", id, "H2=0");

    debit(node.energy, usage_class(at_ms, false), at_ms, params_.costs);
    st.bb.battery_mv = node.energy.battery_mv;
    st.bb.power_mw = node.energy.draw_mw;

    const bool active = params_.rule == ActivityRule::EntropyOfDifference
                            ? bits > threshold_bits(present.bit_depth)
                            : ratio > params_.t_th_pct;
    if (!active) {
        st.bb.present_image.reset();  // inactive: drop the sensed image
        st.bb.status = NodeStatus::Inactive;
        node.status = NodeStatus::Inactive;
        st.bb.context.reset();
        st.phase = CyclePhase::Idle;
        log_line(at_ms, "NMA", "interpret", id,
                 "inactive ss=" + std::to_string(bits));
        return result;
    }

    const bool critical = matches_critical(diff, st.bb);
    if (critical)
        debit(node.energy, usage_class(at_ms, true), at_ms, params_.costs);
    ContextRecord ctx{critical ? ContextKind::CriticalObject : ContextKind::GeneralObject,
                      at_ms, id};
    st.bb.context = ctx;
    st.bb.status = NodeStatus::Active;
    node.status = NodeStatus::Active;
    const Image sensed = *st.bb.present_image;
    st.bb.previous_image = sensed;  // fresh baseline; present kept for fusion

    const double bw_bps = sbb_.available_bw_bps;
    if (bw_bps > 0)
        st.bb.bandwidth_required_pct = static_cast<double>(present.pixel_count()) *
                                       present.bit_depth / bw_bps * 100.0;

    result.active = true;
    result.context = ctx;
    st.phase = CyclePhase::Interpreted;
    st.reportable = true;
    log_line(at_ms, "NMA", "interpret", id, to_string(ctx.kind));
    return result;
}

FloodReport AgencyHost::nma_report(NodeId id) {
    NodeState& st = state(id);
    if (st.phase != CyclePhase::Interpreted || !st.reportable || !st.bb.context)
        throw ProtocolError("nma_report out of order: no active interpretation");
    st.phase = CyclePhase::Idle;
    st.reportable = false;

    Packet pkt;
    pkt.seq = sim_.next_seq();
    pkt.kind = PacketKind::ContextFlood;
    pkt.payload_bytes = 64;  // id, location, context, signal strength
    pkt.src = id;
    pkt.dst = sim_.topology().sink_id;
    const double at_ms = sim_.now_ms();
    FloodReport report = sim_.flood(id, pkt, at_ms);
    log_line(at_ms, "NMA", "report", id,
             report.sink_reached ? "sink-reached" : "sink-unreached");

    if (report.sink_reached) {
        SinkRow row;
        row.node_id = id;
        row.x = st.bb.x;
        row.y = st.bb.y;
        row.status = st.bb.status;
        row.signal_strength_pct = st.bb.signal_strength_pct;
        row.battery_mv = st.bb.battery_mv;
        row.power_mw = st.bb.power_mw;
        row.bandwidth_required_pct = st.bb.bandwidth_required_pct;
        row.context = st.bb.context;
        row.updated_at_ms = report.sink_arrival_ms;
        sbb_.rows[id] = row;  // upsert
    }
    return report;
}

FusingAgent AgencyHost::sma_dispatch(ContextKind trigger, double at_ms) {
    std::vector<NodeId> active;
    for (const auto& [id, row] : sbb_.rows)
        if (row.status == NodeStatus::Active && sim_.topology().node(id).alive())
            active.push_back(id);
    if (active.empty())
        throw std::logic_error("sma_dispatch refused: no active nodes on the SBB");

    FusingAgent agent;
    agent.trigger = trigger;
    agent.profile = trigger == ContextKind::GeneralObject ? params_.low_profile
                                                          : params_.high_profile;
    agent.code_size_bytes = params_.f_code_bytes;
    agent.dispatched_at_ms = at_ms;
    agent.clock_ms = at_ms;
    agent.current_node = sim_.topology().sink_id;

    // nearest-neighbor itinerary over active node locations, from the sink
    const NetworkTopology& topo = sim_.topology();
    double cx = topo.node(topo.sink_id).x;
    double cy = topo.node(topo.sink_id).y;
    std::vector<NodeId> rest = active;
    while (!rest.empty()) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            const Node& n = topo.node(rest[i]);
            const double dx = n.x - cx, dy = n.y - cy;
            const double d = dx * dx + dy * dy;
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        agent.itinerary.push_back(rest[best]);
        cx = topo.node(rest[best]).x;
        cy = topo.node(rest[best]).y;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }

    try {
        agent.reverse_route = geo_route(topo, agent.itinerary.back(), topo.sink_id);
    } catch (const RoutingError& e) {
        log_line(at_ms, "SMA", "reverse-route-failed", e.stuck_node, "flood fallback at return");
    }

    // initial migration: fusion code travels sink -> first itinerary node
    try {
        const auto path = geo_route(topo, topo.sink_id, agent.itinerary.front());
        if (path.size() > 1) {
            TransmissionRecord rec = sim_.transmit(path, agent.code_size_bytes,
                                                   PacketKind::AgentMigration, at_ms);
            agent.clock_ms = rec.end_ms;
            agent.t_load_total += rec.t_load;
            agent.transfers.push_back(std::move(rec));
        }
        agent.current_node = agent.itinerary.front();
    } catch (const RoutingError& e) {
        log_line(at_ms, "SMA", "dispatch-route-failed", e.stuck_node, "");
    }

    log_line(at_ms, "SMA", "dispatch", topo.sink_id,
             std::string(to_string(trigger)) + " itinerary=" +
                 std::to_string(agent.itinerary.size()));
    return agent;
}

double AgencyHost::visit_processing_ms(const FusingAgent& agent, const Image& img) const {
    const double per_px = agent.profile.resolution_class == ResolutionClass::High
                              ? params_.proc_ms_per_pixel_high
                              : params_.proc_ms_per_pixel_low;
    return per_px * static_cast<double>(img.pixel_count());
}

void AgencyHost::fa_visit(FusingAgent& agent, NodeId id) {
    if (agent.phase != FusingAgent::Phase::Dispatched)
        throw ProtocolError("fa_visit after return");
    if (agent.next_index >= agent.itinerary.size())
        throw ProtocolError("fa_visit with exhausted itinerary");
    if (agent.itinerary[agent.next_index] != id)
        throw ProtocolError("fa_visit out of itinerary order");
    if (agent.visited.count(id)) throw ProtocolError("fa_visit node already visited");
    ++agent.next_index;

    Node& node = sim_.topology().node(id);
    NodeState& st = state(id);
    const bool usable = node.alive() && st.bb.status == NodeStatus::Active &&
                        st.bb.present_image.has_value();
    if (!usable) {
        // open issue in the scheme; this artifact skips and logs
        log_line(agent.clock_ms, "FA", "active-node-failure", id, "skipped");
    } else {
        agent.visited.insert(id);
        agent.current_node = id;
        const Image& img = *st.bb.present_image;
        const bool critical = agent.trigger != ContextKind::GeneralObject;
        debit(node.energy, usage_class(agent.clock_ms, critical), agent.clock_ms,
              params_.costs);
        st.bb.battery_mv = node.energy.battery_mv;
        st.bb.power_mw = node.energy.draw_mw;
        agent.clock_ms += visit_processing_ms(agent, img);
        if (!agent.carried_image) {
            agent.carried_image = requantize(img, agent.profile.output_bit_depth);
        } else {
            agent.carried_image = accumulate_fuse(*agent.carried_image, img, agent.profile);
        }
        log_line(agent.clock_ms, "FA", "fuse", id, "");
    }

    // migrate (code + carried image) to the next itinerary node
    if (agent.next_index < agent.itinerary.size()) {
        const NodeId next = agent.itinerary[agent.next_index];
        const NodeId here = agent.current_node;
        std::uint64_t bytes = agent.code_size_bytes;
        if (agent.carried_image)
            bytes += agent.carried_image->pixel_count() * agent.carried_image->bit_depth / 8;
        try {
            const auto path = geo_route(sim_.topology(), here, next);
            if (path.size() > 1) {
                TransmissionRecord rec =
                    sim_.transmit(path, bytes, PacketKind::AgentMigration, agent.clock_ms);
                agent.clock_ms = rec.end_ms;
                agent.t_load_total += rec.t_load;
                agent.transfers.push_back(std::move(rec));
            }
            agent.current_node = next;
            log_line(agent.clock_ms, "FA", "migrate", next, "");
        } catch (const RoutingError& e) {
            log_line(agent.clock_ms, "FA", "migrate-failed", next,
                     "stuck at " + std::to_string(e.stuck_node));
        }
    }
}

ReturnResult AgencyHost::fa_return(FusingAgent& agent) {
    if (agent.phase != FusingAgent::Phase::Dispatched)
        throw ProtocolError("fa_return after disposal");
    if (agent.next_index < agent.itinerary.size())
        throw ProtocolError("fa_return before the itinerary is exhausted");

    ReturnResult out;
    const NodeId sink = sim_.topology().sink_id;
    if (!agent.carried_image) {
        agent.phase = FusingAgent::Phase::Disposed;
        log_line(agent.clock_ms, "FA", "return-empty", sink, "all itinerary nodes failed");
        return out;
    }

    const NodeId last = agent.current_node;
    const Image& fused = *agent.carried_image;
    const std::uint64_t bytes = fused.pixel_count() * fused.bit_depth / 8;

    std::vector<NodeId> route = agent.reverse_route;
    if (route.empty() || route.front() != last) {
        try {
            route = geo_route(sim_.topology(), last, sink);
        } catch (const RoutingError&) {
            route.clear();
        }
    }
    if (route.empty()) {
        // flood fallback: discover a path with a control flood
        Packet probe{sim_.next_seq(), PacketKind::Control, 32, last, sink, 0};
        FloodReport fr = sim_.flood(last, probe, agent.clock_ms);
        if (fr.sink_reached) route = fr.path_to(sink, last);
        agent.clock_ms = std::max(agent.clock_ms, fr.sink_arrival_ms);
    }

    if (route.empty()) {
        agent.phase = FusingAgent::Phase::Disposed;
        log_line(agent.clock_ms, "FA", "return-unreachable", sink, "fused image lost");
        return out;
    }

    TransmissionRecord rec =
        sim_.transmit(route, bytes, PacketKind::FusedImage, agent.clock_ms);
    agent.clock_ms = rec.end_ms;
    agent.t_load_total += rec.t_load;
    out.delivered = rec.packets_received == rec.packets_per_payload;
    out.fused = fused;
    out.delivered_at_ms = rec.end_ms;
    out.fusion_time_ms = rec.end_ms - agent.dispatched_at_ms;
    agent.transfers.push_back(std::move(rec));
    out.t_load_total = agent.t_load_total;
    agent.phase = FusingAgent::Phase::Disposed;
    log_line(agent.clock_ms, "FA", "return", sink,
             out.delivered ? "delivered" : "partial");
    return out;
}

void write_agent_log(const std::vector<AgentLogLine>& log, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write agent log: " + path);
    char buf[64];
    for (const AgentLogLine& l : log) {
        std::snprintf(buf, sizeof(buf), "%.3f", l.t_ms);
        os << buf << '\t' << l.agent_kind << '\t' << l.action << '\t' << l.node_id << '\t'
           << l.detail << '\n';
    }
}

}  // namespace wsnfuse
