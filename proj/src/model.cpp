#include "wsnsim/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace wsnsim {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string_view to_string(Tier tier) {
    switch (tier) {
        case Tier::Normal: return "normal";
        case Tier::Intermediate: return "intermediate";
        case Tier::Advanced: return "advanced";
    }
    return "?";
}

std::string_view to_string(Protocol protocol) {
    switch (protocol) {
        case Protocol::Leach: return "leach";
        case Protocol::Sep: return "sep";
        case Protocol::Esep: return "esep";
        case Protocol::Deec: return "deec";
        case Protocol::Ecrsep: return "ecrsep";
    }
    return "?";
}

std::string_view to_string(EcrMode mode) {
    switch (mode) {
        case EcrMode::InverseNormalized: return "inverse_normalized";
        case EcrMode::AsWritten: return "as_written";
    }
    return "?";
}

Protocol parse_protocol(std::string_view name) {
    const std::string key = lower(name);
    for (Protocol p : kAllProtocols) {
        if (key == to_string(p)) return p;
    }
    throw ConfigError("unknown protocol '" + std::string(name) +
                      "' (valid: leach, sep, esep, deec, ecrsep)");
}

EcrMode parse_ecr_mode(std::string_view name) {
    const std::string key = lower(name);
    if (key == "inverse_normalized") return EcrMode::InverseNormalized;
    if (key == "as_written") return EcrMode::AsWritten;
    throw ConfigError("unknown ecr_mode '" + std::string(name) +
                      "' (valid: inverse_normalized, as_written)");
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double RadioModel::d0() const { return std::sqrt(eps_fs / eps_mp); }

double tx_cost(const RadioModel& radio, double k_bits, double d) {
    const double electronics = radio.e_elec * k_bits;
    if (d < radio.d0()) return electronics + radio.eps_fs * k_bits * d * d;
    return electronics + radio.eps_mp * k_bits * d * d * d * d;
}

double rx_cost(const RadioModel& radio, double k_bits) { return radio.e_elec * k_bits; }

double aggregation_cost(const RadioModel& radio, double k_bits, int signals) {
    if (signals < 1) throw std::invalid_argument("aggregation_cost: signals must be >= 1");
    return radio.e_da * k_bits * signals;
}

Point ScenarioConfig::sink_position() const {
    return Point{sink_x.value_or(field_width / 2.0), sink_y.value_or(field_height / 2.0)};
}

double ScenarioConfig::intermediate_fraction() const { return esep_x.value_or(m); }

double ScenarioConfig::intermediate_factor() const { return esep_beta.value_or(alpha / 2.0); }

void ScenarioConfig::validate() const {
    require(n >= 1, "n must be >= 1");
    require(positive_finite(field_width) && positive_finite(field_height),
            "field dimensions must be positive");
    require(std::isfinite(sink_position().x) && std::isfinite(sink_position().y), "sink must be finite");
    require(m >= 0.0 && m <= 1.0, "m must lie in [0, 1]");
    require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
    require(positive_finite(e0), "e0 must be positive");
    require(p_opt > 0.0 && p_opt < 1.0, "p_opt must lie in (0, 1)");
    require(p_opt * n >= 1.0 - 1e-9, "p_opt * n must be >= 1 (at least one expected CH per round)");
    require(positive_finite(k_bits), "k_bits must be positive");
    require(positive_finite(radio.e_elec) && positive_finite(radio.e_da) &&
                positive_finite(radio.eps_fs) && positive_finite(radio.eps_mp),
            "radio coefficients must be positive");
    require(max_rounds >= 0, "max_rounds must be >= 0");
    if (three_tier()) {
        const double x = intermediate_fraction();
        const double beta = intermediate_factor();
        require(x >= 0.0 && x <= 1.0, "esep_x must lie in [0, 1]");
        require(m + x <= 1.0 + 1e-12, "m + esep_x must be <= 1");
        require(tier_count(m, n) + tier_count(x, n) <= n, "advanced + intermediate nodes exceed n");
        require(std::isfinite(beta) && beta >= 0.0 && beta <= alpha,
                "esep_beta must satisfy 0 <= esep_beta <= alpha");
    }
}

int tier_count(double fraction, int n) {
    return static_cast<int>(std::nearbyint(fraction * static_cast<double>(n)));
}

std::vector<NodeState> build_network(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    const int advanced = tier_count(config.m, config.n);
    const int intermediate = config.three_tier() ? tier_count(config.intermediate_fraction(), config.n) : 0;

    std::vector<NodeState> nodes(static_cast<std::size_t>(config.n));
    for (int i = 0; i < config.n; ++i) {
        NodeState& node = nodes[static_cast<std::size_t>(i)];
        node.id = i;
        node.position.x = rng.uniform() * config.field_width;
        node.position.y = rng.uniform() * config.field_height;
        if (i < advanced) {
            node.tier = Tier::Advanced;
            node.initial_energy = config.e0 * (1.0 + config.alpha);
        } else if (i < advanced + intermediate) {
            node.tier = Tier::Intermediate;
            node.initial_energy = config.e0 * (1.0 + config.intermediate_factor());
        } else {
            node.tier = Tier::Normal;
            node.initial_energy = config.e0;
        }
        node.residual_energy = node.initial_energy;
    }
    return nodes;
}

double total_initial_energy(const ScenarioConfig& config) {
    double factor = 1.0 + config.alpha * config.m;
    if (config.three_tier()) factor += config.intermediate_factor() * config.intermediate_fraction();
    return config.n * config.e0 * factor;
}

}  // namespace wsnsim
