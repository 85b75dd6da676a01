#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnsim/engine.hpp"
#include "wsnsim/model.hpp"

namespace wsnsim {

/// File-system failure; the message always carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// FND/HND/LND are the first rounds with dead >= 1, >= ceil(n/2) and == n.
/// The node count is read from the series itself (alive + dead).
SimulationSummary summarize(std::vector<RoundMetrics> series);

inline constexpr const char* kSeriesHeader =
    "round,alive,dead,ch_count,packets_round,packets_cum,energy_residual_j";

std::string series_csv(std::span<const RoundMetrics> series);
void write_series_csv(std::span<const RoundMetrics> series, const std::filesystem::path& path);
/// Inverse of write_series_csv; energy_debited is not serialized and reads back as 0.
std::vector<RoundMetrics> read_series_csv(const std::filesystem::path& path);

struct Stat {
    double mean = 0.0;
    double stddev = 0.0;
    int defined = 0;  // replications in which the metric was reached
};

/// Sample mean and standard deviation over the values that are present.
/// Mean is NaN when none are.
Stat aggregate(std::span<const std::optional<double>> values);

struct MeanCurvePoint {
    int round = 0;
    double alive = 0.0;
    double dead = 0.0;
    double packets_cum = 0.0;
};

struct ProtocolReport {
    Protocol protocol = Protocol::Leach;
    std::vector<SimulationSummary> runs;  // index k used seed base_seed + k
    Stat fnd;
    Stat hnd;
    Stat lnd;
    Stat packets;
    std::vector<MeanCurvePoint> mean_curve;
};

struct ComparisonReport {
    ScenarioConfig base;
    int replications = 0;
    std::vector<ProtocolReport> protocols;
    /// tally[a][b]: replications where protocol a's metric strictly exceeds b's.
    /// Unreached deaths count as max_rounds + 1.
    std::vector<std::vector<int>> fnd_tally;
    std::vector<std::vector<int>> lnd_tally;
    std::vector<std::vector<int>> packets_tally;
};

/// Runs `replications` paired-seed runs of every protocol on `base`
/// (replication k uses seed base.seed + k for every protocol) using up to
/// `jobs` worker threads. Every protocol's config is validated up front.
ComparisonReport compare(const ScenarioConfig& base, std::span<const Protocol> protocols, int replications,
                         int jobs = 1);

/// Censored death round used for tallies and ordering checks.
double censored(const std::optional<int>& round, const ScenarioConfig& config);

inline constexpr const char* kSummaryHeader =
    "protocol,fnd_mean,fnd_std,hnd_mean,hnd_std,lnd_mean,lnd_std,packets_mean,packets_std";

std::string summary_row(const ProtocolReport& report);
void write_summary(const ComparisonReport& report, const std::filesystem::path& path);
void write_mean_curve_csv(const ProtocolReport& report, const std::filesystem::path& path);
std::string format_tally(const ComparisonReport& report);
void write_tally(const ComparisonReport& report, const std::filesystem::path& path);

/// Writes `content` verbatim, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace wsnsim
