#include "wsnsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsnsim {

namespace {

constexpr double kMaxProbability = 0.99;
constexpr double kMinProbability = 1e-9;
constexpr double kInverseRatioCap = 2.0;

double clamp_probability(double p) { return std::clamp(p, kMinProbability, kMaxProbability); }

}  // namespace

bool ElectionContext::was_previous_ch(int id) const {
    return std::binary_search(prev_round_chs.begin(), prev_round_chs.end(), id);
}

double threshold(double p, long long r) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("threshold: p must lie in (0, 1)");
    if (r < 0) throw std::invalid_argument("threshold: r must be >= 0");
    const long long period = epoch_length(p);
    const double denominator = 1.0 - p * static_cast<double>(r % period);
    if (denominator <= 1e-12) return 1.0;
    return std::min(1.0, p / denominator);
}

long long epoch_length(double p) { return std::max(1LL, std::llround(1.0 / p)); }

int epoch_remaining(double p, long long r) {
    const long long period = epoch_length(p);
    return static_cast<int>(period - 1 - r % period);
}

double leach_probability(const NodeState&, const ScenarioConfig& config) { return config.p_opt; }

double sep_weight(Tier tier, const ScenarioConfig& config) {
    const double denominator = 1.0 + config.alpha * config.m;
    switch (tier) {
        case Tier::Normal: return 1.0 / denominator;
        case Tier::Advanced: return (1.0 + config.alpha) / denominator;
        case Tier::Intermediate: break;
    }
    throw std::invalid_argument("two-tier weighting applied to an intermediate node");
}

double sep_probability(const NodeState& node, const ScenarioConfig& config) {
    return config.p_opt * sep_weight(node.tier, config);
}

double esep_probability(const NodeState& node, const ScenarioConfig& config) {
    const double x = config.intermediate_fraction();
    const double beta = config.intermediate_factor();
    const double denominator = 1.0 + config.alpha * config.m + beta * x;
    switch (node.tier) {
        case Tier::Normal: return config.p_opt / denominator;
        case Tier::Intermediate: return config.p_opt * (1.0 + beta) / denominator;
        case Tier::Advanced: return config.p_opt * (1.0 + config.alpha) / denominator;
    }
    return config.p_opt;
}

double deec_probability(const NodeState& node, const ElectionContext& ctx, const ScenarioConfig& config) {
    if (!(ctx.avg_residual_energy > 0.0)) {
        throw std::logic_error("deec_probability: average residual energy must be positive");
    }
    return clamp_probability(config.p_opt * node.residual_energy / ctx.avg_residual_energy);
}

double ecr(const NodeState& node, int r) {
    if (r <= 1) return 0.0;
    return (node.initial_energy - node.residual_energy) / static_cast<double>(r - 1);
}

double ecrsep_probability(const NodeState& node, const ElectionContext& ctx, const ScenarioConfig& config) {
    if (ctx.was_previous_ch(node.id)) {
        throw std::logic_error("ecrsep_probability: node served as CH in the previous round");
    }
    const double own = ecr(node, ctx.round);
    double ratio = 1.0;
    if (config.ecr_mode == EcrMode::AsWritten) {
        if (ctx.avg_ecr > 0.0) ratio = own / ctx.avg_ecr;
    } else if (own > 0.0 && ctx.avg_ecr > 0.0) {
        ratio = std::min(kInverseRatioCap, ctx.avg_ecr / own);
    }
    return clamp_probability(config.p_opt * sep_weight(node.tier, config) * ratio);
}

double election_probability(const NodeState& node, const ElectionContext& ctx, const ScenarioConfig& config) {
    switch (config.protocol) {
        case Protocol::Leach: return leach_probability(node, config);
        case Protocol::Sep: return sep_probability(node, config);
        case Protocol::Esep: return esep_probability(node, config);
        case Protocol::Deec: return deec_probability(node, ctx, config);
        case Protocol::Ecrsep: return ecrsep_probability(node, ctx, config);
    }
    return config.p_opt;
}

std::vector<int> elect_cluster_heads(const ScenarioConfig& config, std::span<const NodeState> network,
                                     const ElectionContext& ctx, ProtocolState& state, Rng& rng) {
    if (state.epoch_counter.size() != network.size()) {
        throw std::invalid_argument("elect_cluster_heads: protocol state does not match network size");
    }
    const long long offset = ctx.round - 1;
    std::vector<int> elected;
    for (const NodeState& node : network) {
        const auto idx = static_cast<std::size_t>(node.id);
        if (!node.alive) continue;
        const bool eligible = state.in_g(node.id) &&
                              !(config.protocol == Protocol::Ecrsep && ctx.was_previous_ch(node.id));
        if (!eligible) {
            if (state.epoch_counter[idx] > 0) --state.epoch_counter[idx];
            continue;
        }
        const double p = election_probability(node, ctx, config);
        if (rng.uniform() < threshold(p, offset)) {
            elected.push_back(node.id);
            state.epoch_counter[idx] = epoch_remaining(p, offset);
            ++state.times_elected[idx];
        }
    }
    return elected;
}

}  // namespace wsnsim
