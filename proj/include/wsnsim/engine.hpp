#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wsnsim/model.hpp"
#include "wsnsim/protocols.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

struct RoundMetrics {
    int round = 0;
    int alive = 0;
    int dead = 0;
    int ch_count = 0;
    long long packets_to_bs = 0;
    long long packets_to_bs_cum = 0;
    double residual_energy_total = 0.0;
    /// Energy actually removed from batteries this round (not serialized).
    double energy_debited = 0.0;

    bool operator==(const RoundMetrics&) const = default;
};

struct SimulationSummary {
    std::optional<int> fnd;
    std::optional<int> hnd;
    std::optional<int> lnd;
    long long total_packets = 0;
    std::vector<RoundMetrics> series;
};

/// Per-node role for one round.
inline constexpr int kClusterHead = -1;
inline constexpr int kDirectToSink = -2;
inline constexpr int kInactive = -3;  // dead node

/// `role[i]` is the CH id node i reports to, or one of the constants above.
struct ClusterAssignment {
    std::vector<int> role;
    std::vector<int> members_of(int ch) const;
};

/// Each alive non-CH joins its nearest CH (lowest id on ties). With no CHs,
/// every alive node is marked direct-to-sink.
ClusterAssignment form_clusters(std::span<const int> ch_ids, std::span<const NodeState> nodes);

/// One seeded run. Owns its network, protocol state and random stream.
class Simulation {
public:
    explicit Simulation(ScenarioConfig config);
    Simulation(ScenarioConfig config, std::vector<NodeState> network);

    /// Executes the next round. Precondition: !finished().
    RoundMetrics run_round();

    bool all_dead() const { return alive_count() == 0; }
    bool finished() const { return all_dead() || round_ >= config_.max_rounds; }

    int alive_count() const;
    double residual_total() const;

    const ScenarioConfig& config() const { return config_; }
    const std::vector<NodeState>& nodes() const { return nodes_; }
    const ProtocolState& protocol_state() const { return state_; }
    const ElectionContext& context() const { return ctx_; }
    const std::vector<int>& last_cluster_heads() const { return last_chs_; }
    const ClusterAssignment& last_assignment() const { return last_assignment_; }

private:
    double debit(NodeState& node, double cost);
    void mark_deaths();
    void refresh_context(int completed_round);

    ScenarioConfig config_;
    Rng rng_;
    std::vector<NodeState> nodes_;
    ProtocolState state_;
    ElectionContext ctx_;
    int round_ = 0;
    long long packets_cum_ = 0;
    double round_debit_ = 0.0;
    std::vector<int> last_chs_;
    ClusterAssignment last_assignment_;
};

/// Called after every round with the simulation state and that round's metrics.
using RoundObserver = std::function<void(const Simulation&, const RoundMetrics&)>;

/// Builds the network from config.seed and runs until every node is dead or
/// max_rounds is reached.
SimulationSummary run_simulation(const ScenarioConfig& config, const RoundObserver& observer = {});

}  // namespace wsnsim
