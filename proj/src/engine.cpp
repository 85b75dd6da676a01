#include "wsnsim/engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "wsnsim/metrics.hpp"

namespace wsnsim {

std::vector<int> ClusterAssignment::members_of(int ch) const {
    std::vector<int> members;
    for (std::size_t i = 0; i < role.size(); ++i) {
        if (role[i] == ch) members.push_back(static_cast<int>(i));
    }
    return members;
}

ClusterAssignment form_clusters(std::span<const int> ch_ids, std::span<const NodeState> nodes) {
    ClusterAssignment out;
    out.role.assign(nodes.size(), kInactive);
    for (int ch : ch_ids) out.role[static_cast<std::size_t>(ch)] = kClusterHead;

    for (const NodeState& node : nodes) {
        auto& role = out.role[static_cast<std::size_t>(node.id)];
        if (!node.alive || role == kClusterHead) continue;
        if (ch_ids.empty()) {
            role = kDirectToSink;
            continue;
        }
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int ch : ch_ids) {
            const double d = distance(node.position, nodes[static_cast<std::size_t>(ch)].position);
            // Strict comparison keeps the lowest id on ties as long as ch_ids is ascending.
            if (d < best_d || (d == best_d && ch < best)) {
                best_d = d;
                best = ch;
            }
        }
        role = best;
    }
    return out;
}

Simulation::Simulation(ScenarioConfig config)
    : config_(std::move(config)), rng_(config_.seed) {
    nodes_ = build_network(config_, rng_);
    state_ = ProtocolState(nodes_.size());
    refresh_context(0);
}

Simulation::Simulation(ScenarioConfig config, std::vector<NodeState> network)
    : config_(std::move(config)), rng_(config_.seed), nodes_(std::move(network)) {
    config_.validate();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id != static_cast<int>(i)) {
            throw std::invalid_argument("Simulation: node ids must equal their index");
        }
    }
    state_ = ProtocolState(nodes_.size());
    refresh_context(0);
}

int Simulation::alive_count() const {
    return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const NodeState& n) { return n.alive; }));
}

double Simulation::residual_total() const {
    double total = 0.0;
    for (const NodeState& node : nodes_) total += node.residual_energy;
    return total;
}

double Simulation::debit(NodeState& node, double cost) {
    const double applied = std::min(cost, node.residual_energy);
    node.residual_energy -= applied;
    if (node.residual_energy <= 0.0) node.residual_energy = 0.0;
    round_debit_ += applied;
    return applied;
}

void Simulation::mark_deaths() {
    for (NodeState& node : nodes_) {
        if (node.alive && node.residual_energy <= 0.0) node.alive = false;
    }
}

void Simulation::refresh_context(int completed_round) {
    ctx_.round = completed_round + 1;
    ctx_.prev_round_chs = last_chs_;
    double energy = 0.0;
    double rate = 0.0;
    int alive = 0;
    for (const NodeState& node : nodes_) {
        if (!node.alive) continue;
        ++alive;
        energy += node.residual_energy;
        rate += ecr(node, ctx_.round);
    }
    ctx_.avg_residual_energy = alive > 0 ? energy / alive : 0.0;
    ctx_.avg_ecr = alive > 0 ? rate / alive : 0.0;
}

RoundMetrics Simulation::run_round() {
    if (finished()) throw std::logic_error("run_round: simulation already finished");
    ++round_;
    round_debit_ = 0.0;

    last_chs_ = elect_cluster_heads(config_, nodes_, ctx_, state_, rng_);
    last_assignment_ = form_clusters(last_chs_, nodes_);

    const RadioModel& radio = config_.radio;
    const double k = config_.k_bits;
    const Point sink = config_.sink_position();
    const double member_rx = rx_cost(radio, k) + aggregation_cost(radio, k, 1);

    for (NodeState& node : nodes_) {
        const int role = last_assignment_.role[static_cast<std::size_t>(node.id)];
        if (role < 0) continue;
        NodeState& head = nodes_[static_cast<std::size_t>(role)];
        debit(node, tx_cost(radio, k, distance(node.position, head.position)));
        debit(head, member_rx);
    }
    mark_deaths();

    long long packets = 0;
    for (NodeState& node : nodes_) {
        if (!node.alive) continue;
        const int role = last_assignment_.role[static_cast<std::size_t>(node.id)];
        if (role == kClusterHead) {
            debit(node, aggregation_cost(radio, k, 1) + tx_cost(radio, k, distance(node.position, sink)));
            ++packets;
        } else if (role == kDirectToSink) {
            debit(node, tx_cost(radio, k, distance(node.position, sink)));
            ++packets;
        }
    }
    mark_deaths();

    for (int ch : last_chs_) nodes_[static_cast<std::size_t>(ch)].ch_in_round = round_;
    refresh_context(round_);

    packets_cum_ += packets;
    RoundMetrics metrics;
    metrics.round = round_;
    metrics.alive = alive_count();
    metrics.dead = static_cast<int>(nodes_.size()) - metrics.alive;
    metrics.ch_count = static_cast<int>(last_chs_.size());
    metrics.packets_to_bs = packets;
    metrics.packets_to_bs_cum = packets_cum_;
    metrics.residual_energy_total = residual_total();
    metrics.energy_debited = round_debit_;
    return metrics;
}

SimulationSummary run_simulation(const ScenarioConfig& config, const RoundObserver& observer) {
    Simulation sim(config);
    std::vector<RoundMetrics> series;
    while (!sim.finished()) {
        series.push_back(sim.run_round());
        if (observer) observer(sim, series.back());
    }
    return summarize(std::move(series));
}

}  // namespace wsnsim
