#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wsnsim/engine.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/model.hpp"
#include "wsnsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace wsnsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

fs::path default_out_dir() {
    if (const char* env = std::getenv("WSNSIM_OUT_DIR"); env && *env) return env;
    return "wsnsim_out";
}

std::string milestone(const std::optional<int>& round) { return round ? std::to_string(*round) : "NA"; }

void announce(const fs::path& path) { std::cout << "wrote " << path.string() << '\n'; }

struct CommonOptions {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<int> rounds;
    std::optional<std::string> ecr_mode;
    std::vector<std::string> settings;
    fs::path out = default_out_dir();
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("scenario", o.scenario, "Scenario file (key = value lines)");
    cmd->add_option("--seed", o.seed, "Random seed (first replication for compare/sweep)");
    cmd->add_option("--rounds", o.rounds, "Round budget (max_rounds)");
    cmd->add_option("--ecr-mode", o.ecr_mode, "ECRSEP rate normalization: inverse_normalized or as_written");
    cmd->add_option("--set", o.settings, "Override any scenario key, e.g. --set alpha=2")->take_all();
    cmd->add_option("--out", o.out, "Output directory (default: $WSNSIM_OUT_DIR or ./wsnsim_out)");
}

// Precedence: built-in defaults < scenario file < --set < dedicated flags.
ScenarioConfig resolve(const CommonOptions& o, ScenarioConfig base) {
    ScenarioConfig c = o.scenario.empty() ? base : load_scenario(o.scenario, base);
    for (const std::string& kv : o.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) c.seed = *o.seed;
    if (o.rounds) c.max_rounds = *o.rounds;
    if (o.ecr_mode) c.ecr_mode = parse_ecr_mode(*o.ecr_mode);
    return c;
}

// Baseline for compare and sweep: the heterogeneous setting of the reference comparison.
ScenarioConfig comparison_defaults() {
    ScenarioConfig c;
    c.alpha = 2.0;
    c.m = 0.2;
    return c;
}

std::vector<Protocol> parse_protocols(const std::vector<std::string>& names) {
    std::vector<Protocol> out;
    if (names.empty()) return {std::begin(kAllProtocols), std::end(kAllProtocols)};
    for (const auto& name : names) out.push_back(parse_protocol(name));
    return out;
}

fs::path seed_csv(const fs::path& out, Protocol p, std::uint64_t seed) {
    return out / std::string(to_string(p)) / ("seed" + std::to_string(seed) + ".csv");
}

int cmd_run(const CommonOptions& o, const std::optional<std::string>& protocol) {
    ScenarioConfig c = resolve(o, ScenarioConfig{});
    if (protocol) c.protocol = parse_protocol(*protocol);
    c.validate();
    const SimulationSummary s = run_simulation(c);

    const fs::path csv = seed_csv(o.out, c.protocol, c.seed);
    write_series_csv(s.series, csv);
    announce(csv);
    const fs::path summary = o.out / "summary.txt";
    write_text(summary, "protocol,seed,rounds,fnd,hnd,lnd,packets\n" + std::string(to_string(c.protocol)) + ',' +
                            std::to_string(c.seed) + ',' + std::to_string(s.series.size()) + ',' + milestone(s.fnd) +
                            ',' + milestone(s.hnd) + ',' + milestone(s.lnd) + ',' +
                            std::to_string(s.total_packets) + '\n');
    announce(summary);

    std::cout << "protocol " << to_string(c.protocol) << " seed " << c.seed << '\n'
              << "fnd " << milestone(s.fnd) << '\n'
              << "hnd " << milestone(s.hnd) << '\n'
              << "lnd " << milestone(s.lnd) << '\n'
              << "packets " << s.total_packets << '\n';
    return kExitOk;
}

struct CompareOptions {
    std::vector<std::string> protocols;
    int replications = 30;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

void add_compare(CLI::App* cmd, CompareOptions& o) {
    cmd->add_option("--protocols", o.protocols, "Protocols to compare (default: all)")->delimiter(',');
    cmd->add_option("--replications,-R", o.replications, "Paired-seed replications per protocol")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

ComparisonReport write_comparison(const ScenarioConfig& base, const std::vector<Protocol>& protocols,
                                  const CompareOptions& o, const fs::path& out) {
    ComparisonReport report = compare(base, protocols, o.replications, o.jobs);
    for (const ProtocolReport& pr : report.protocols) {
        for (int k = 0; k < report.replications; ++k) {
            const fs::path csv = seed_csv(out, pr.protocol, base.seed + static_cast<std::uint64_t>(k));
            write_series_csv(pr.runs[static_cast<std::size_t>(k)].series, csv);
            announce(csv);
        }
        const fs::path curve = out / std::string(to_string(pr.protocol)) / "mean_curve.csv";
        write_mean_curve_csv(pr, curve);
        announce(curve);
    }
    const fs::path summary = out / "summary.txt";
    write_summary(report, summary);
    announce(summary);
    const fs::path tally = out / "tally.txt";
    write_tally(report, tally);
    announce(tally);
    return report;
}

void print_report(const ComparisonReport& report) {
    std::cout << kSummaryHeader << '\n';
    for (const auto& pr : report.protocols) std::cout << summary_row(pr) << '\n';
    std::cout << '\n' << format_tally(report);
}

int cmd_compare(const CommonOptions& common, const CompareOptions& o) {
    const ScenarioConfig base = resolve(common, comparison_defaults());
    const auto protocols = parse_protocols(o.protocols);
    print_report(write_comparison(base, protocols, o, common.out));
    return kExitOk;
}

int cmd_sweep(const CommonOptions& common, const CompareOptions& o, const std::string& param,
              const std::vector<std::string>& values) {
    const ScenarioConfig base = resolve(common, comparison_defaults());
    const auto protocols = parse_protocols(o.protocols);

    std::vector<ScenarioConfig> points;
    for (const std::string& value : values) {
        ScenarioConfig c = base;
        apply_setting(c, param, value);
        for (Protocol p : protocols) {
            ScenarioConfig check = c;
            check.protocol = p;
            try {
                check.validate();
            } catch (const ConfigError& e) {
                throw ConfigError(param + "=" + value + ": " + e.what());
            }
        }
        points.push_back(c);
    }

    std::string rollup = "# hnd: round at which half of the nodes are dead (extension metric)\n";
    rollup += param + ',' + kSummaryHeader + '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::cout << "== " << param << " = " << values[i] << '\n';
        const auto report = write_comparison(points[i], protocols, o, common.out / (param + "_" + values[i]));
        print_report(report);
        for (const auto& pr : report.protocols) rollup += values[i] + ',' + summary_row(pr) + '\n';
    }
    const fs::path path = common.out / "sweep_summary.txt";
    write_text(path, rollup);
    announce(path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-based clustering simulator for heterogeneous wireless sensor networks"};
    app.require_subcommand(1);
    app.footer("Precedence: flags > --set > scenario file > defaults. Exit codes: 0 ok, 1 I/O error, 2 bad input.");

    CommonOptions run_opts, compare_opts, sweep_opts;
    std::optional<std::string> protocol;
    CompareOptions cmp, sweep_cmp;
    std::string param;
    std::vector<std::string> values;

    auto* run = app.add_subcommand("run", "Simulate one protocol with one seed");
    add_common(run, run_opts);
    run->add_option("--protocol,-p", protocol, "leach, sep, esep, deec or ecrsep");

    auto* comp = app.add_subcommand("compare", "Paired-seed comparison of several protocols (default alpha=2, m=0.2)");
    add_common(comp, compare_opts);
    add_compare(comp, cmp);

    auto* sweep = app.add_subcommand("sweep", "Run compare for each value of one parameter");
    add_common(sweep, sweep_opts);
    add_compare(sweep, sweep_cmp);
    sweep->add_option("--param", param, "Parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"m", "alpha", "p_opt", "n"}));
    sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_opts, protocol);
        if (*comp) return cmd_compare(compare_opts, cmp);
        return cmd_sweep(sweep_opts, sweep_cmp, param, values);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
