#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/rng.hpp"

namespace wsnsim {

/// Raised for any scenario that violates the configuration invariants.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Tier { Normal, Intermediate, Advanced };
enum class Protocol { Leach, Sep, Esep, Deec, Ecrsep };
enum class EcrMode { InverseNormalized, AsWritten };

std::string_view to_string(Tier tier);
std::string_view to_string(Protocol protocol);
std::string_view to_string(EcrMode mode);

/// Case-insensitive; throws ConfigError naming the valid choices.
Protocol parse_protocol(std::string_view name);
EcrMode parse_ecr_mode(std::string_view name);

inline constexpr Protocol kAllProtocols[] = {
    Protocol::Leach, Protocol::Sep, Protocol::Esep, Protocol::Deec, Protocol::Ecrsep};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

/// First-order radio energy model with a free-space / multipath amplifier split.
/// All coefficients are per bit; the crossover distance is derived on demand.
struct RadioModel {
    double e_elec = 50e-9;       // J/bit, TX and RX electronics
    double e_da = 5e-9;          // J/bit/signal, aggregation
    double eps_fs = 10e-12;      // J/bit/m^2
    double eps_mp = 0.0013e-12;  // J/bit/m^4

    double d0() const;
};

double tx_cost(const RadioModel& radio, double k_bits, double d);
double rx_cost(const RadioModel& radio, double k_bits);
/// CH-side aggregation of `signals` k-bit readings. Throws if signals < 1.
double aggregation_cost(const RadioModel& radio, double k_bits, int signals);

struct NodeState {
    int id = 0;
    Point position;
    Tier tier = Tier::Normal;
    double initial_energy = 0.0;
    double residual_energy = 0.0;
    bool alive = true;
    std::optional<int> ch_in_round;
};

struct ScenarioConfig {
    int n = 100;
    double field_width = 100.0;
    double field_height = 100.0;
    std::optional<double> sink_x;  // defaults to the field center
    std::optional<double> sink_y;
    double m = 0.1;
    double alpha = 1.0;
    std::optional<double> esep_x;     // defaults to m
    std::optional<double> esep_beta;  // defaults to alpha / 2
    double e0 = 0.5;
    double p_opt = 0.1;
    double k_bits = 4000.0;
    RadioModel radio;
    int max_rounds = 30000;
    std::uint64_t seed = 1;
    Protocol protocol = Protocol::Ecrsep;
    EcrMode ecr_mode = EcrMode::InverseNormalized;

    Point sink_position() const;
    double intermediate_fraction() const;
    double intermediate_factor() const;
    /// Only ESEP networks carry the intermediate tier.
    bool three_tier() const { return protocol == Protocol::Esep; }

    /// Throws ConfigError with a description of the first violated invariant.
    void validate() const;
};

/// Nearest-integer node count for a tier fraction, ties to even.
int tier_count(double fraction, int n);

/// Positions are drawn first (x then y per node, ascending id), so every
/// protocol sharing a seed sees the same placement. Tiers are assigned by id:
/// Advanced first, then Intermediate, then Normal.
std::vector<NodeState> build_network(const ScenarioConfig& config, Rng& rng);

double total_initial_energy(const ScenarioConfig& config);

}  // namespace wsnsim
