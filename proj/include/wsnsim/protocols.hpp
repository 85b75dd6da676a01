#pragma once

#include <span>
#include <vector>

#include "wsnsim/model.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

/// Network-wide quantities an election may consult. Built by the engine at
/// the end of each round for use in the next one.
struct ElectionContext {
    int round = 1;
    double avg_residual_energy = 0.0;  // mean over alive nodes
    double avg_ecr = 0.0;              // mean ECR over alive nodes
    std::vector<int> prev_round_chs;   // sorted ascending

    bool was_previous_ch(int id) const;
};

/// Per-node rotating-epoch bookkeeping. A node is in the eligible set G
/// exactly when its counter is zero.
struct ProtocolState {
    std::vector<int> epoch_counter;
    std::vector<int> times_elected;

    explicit ProtocolState(std::size_t nodes = 0) : epoch_counter(nodes, 0), times_elected(nodes, 0) {}

    bool in_g(int id) const { return epoch_counter[static_cast<std::size_t>(id)] == 0; }
};

/// Rotating-epoch election threshold. `r` is the zero-based round offset;
/// the epoch length is round(1/p). Saturates at 1 in the final round of an epoch.
double threshold(double p, long long r);

/// Epoch length round(1/p), at least 1.
long long epoch_length(double p);

/// Rounds left in the epoch containing zero-based round offset `r`. A node
/// elected at `r` stays out of G for exactly this many rounds, so it rejoins
/// at the next epoch boundary.
int epoch_remaining(double p, long long r);

double leach_probability(const NodeState& node, const ScenarioConfig& config);
double sep_probability(const NodeState& node, const ScenarioConfig& config);
double esep_probability(const NodeState& node, const ScenarioConfig& config);
double deec_probability(const NodeState& node, const ElectionContext& ctx, const ScenarioConfig& config);

/// Average energy spent per elapsed round; zero in round 1.
double ecr(const NodeState& node, int r);

/// SEP tier weight: 1/(1+alpha m) for normal nodes, (1+alpha)/(1+alpha m) for advanced.
double sep_weight(Tier tier, const ScenarioConfig& config);

double ecrsep_probability(const NodeState& node, const ElectionContext& ctx, const ScenarioConfig& config);

/// Dispatches to the rule selected by config.protocol.
double election_probability(const NodeState& node, const ElectionContext& ctx, const ScenarioConfig& config);

/// Runs one election over `network` in ascending id order, drawing one
/// uniform per eligible node. Returns the elected ids in ascending order and
/// advances the epoch counters in `state`.
std::vector<int> elect_cluster_heads(const ScenarioConfig& config, std::span<const NodeState> network,
                                     const ElectionContext& ctx, ProtocolState& state, Rng& rng);

}  // namespace wsnsim
