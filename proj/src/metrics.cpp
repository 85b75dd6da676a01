#include "wsnsim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace wsnsim {

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

std::string fmt_stat(double value) { return std::isnan(value) ? "NA" : fmt("%.3f", value); }

std::optional<double> as_double(const std::optional<int>& v) {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::vector<MeanCurvePoint> mean_curve(const std::vector<SimulationSummary>& runs) {
    std::size_t length = 0;
    for (const auto& run : runs) length = std::max(length, run.series.size());
    std::vector<MeanCurvePoint> curve(length);
    if (runs.empty()) return curve;
    for (std::size_t r = 0; r < length; ++r) {
        MeanCurvePoint& point = curve[r];
        point.round = static_cast<int>(r) + 1;
        for (const auto& run : runs) {
            if (run.series.empty()) continue;
            // Runs that ended early stay in their final (all-dead) state.
            const RoundMetrics& m = run.series[std::min(r, run.series.size() - 1)];
            point.alive += m.alive;
            point.dead += m.dead;
            point.packets_cum += static_cast<double>(m.packets_to_bs_cum);
        }
        const double count = static_cast<double>(runs.size());
        point.alive /= count;
        point.dead /= count;
        point.packets_cum /= count;
    }
    return curve;
}

using Tally = std::vector<std::vector<int>>;

template <typename Metric>
Tally tally(const std::vector<ProtocolReport>& reports, int replications, Metric metric) {
    Tally out(reports.size(), std::vector<int>(reports.size(), 0));
    for (std::size_t a = 0; a < reports.size(); ++a) {
        for (std::size_t b = 0; b < reports.size(); ++b) {
            if (a == b) continue;
            for (int k = 0; k < replications; ++k) {
                const auto& ra = reports[a].runs[static_cast<std::size_t>(k)];
                const auto& rb = reports[b].runs[static_cast<std::size_t>(k)];
                if (metric(ra) > metric(rb)) ++out[a][b];
            }
        }
    }
    return out;
}

void format_one_tally(std::ostringstream& out, const std::string& title, const ComparisonReport& report,
                      const Tally& t) {
    out << title << " (row > column, out of " << report.replications << " paired seeds)\n";
    out << "        ";
    for (const auto& p : report.protocols) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%8s", std::string(to_string(p.protocol)).c_str());
        out << buf;
    }
    out << '\n';
    for (std::size_t a = 0; a < report.protocols.size(); ++a) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%-8s", std::string(to_string(report.protocols[a].protocol)).c_str());
        out << buf;
        for (std::size_t b = 0; b < report.protocols.size(); ++b) {
            if (a == b) {
                out << "       -";
            } else {
                std::snprintf(buf, sizeof buf, "%8d", t[a][b]);
                out << buf;
            }
        }
        out << '\n';
    }
}

}  // namespace

SimulationSummary summarize(std::vector<RoundMetrics> series) {
    SimulationSummary summary;
    if (!series.empty()) {
        const int n = series.front().alive + series.front().dead;
        const int half = (n + 1) / 2;
        for (const RoundMetrics& m : series) {
            if (!summary.fnd && m.dead >= 1) summary.fnd = m.round;
            if (!summary.hnd && m.dead >= half) summary.hnd = m.round;
            if (!summary.lnd && m.dead == n) summary.lnd = m.round;
        }
        summary.total_packets = series.back().packets_to_bs_cum;
    }
    summary.series = std::move(series);
    return summary;
}

std::string series_csv(std::span<const RoundMetrics> series) {
    std::string out = kSeriesHeader;
    out += '\n';
    char buf[160];
    for (const RoundMetrics& m : series) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%lld,%lld,%.9f\n", m.round, m.alive, m.dead, m.ch_count,
                      m.packets_to_bs, m.packets_to_bs_cum, m.residual_energy_total);
        out += buf;
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

void write_series_csv(std::span<const RoundMetrics> series, const std::filesystem::path& path) {
    write_text(path, series_csv(series));
}

std::vector<RoundMetrics> read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::string line;
    if (!std::getline(in, line) || line != kSeriesHeader) {
        throw IoError("unexpected series header in " + path.string());
    }
    std::vector<RoundMetrics> series;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto f = split_csv_line(line);
        if (f.size() != 7) throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 7 fields");
        try {
            RoundMetrics m;
            m.round = std::stoi(f[0]);
            m.alive = std::stoi(f[1]);
            m.dead = std::stoi(f[2]);
            m.ch_count = std::stoi(f[3]);
            m.packets_to_bs = std::stoll(f[4]);
            m.packets_to_bs_cum = std::stoll(f[5]);
            m.residual_energy_total = std::stod(f[6]);
            series.push_back(m);
        } catch (const std::logic_error&) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
        }
    }
    return series;
}

Stat aggregate(std::span<const std::optional<double>> values) {
    Stat s;
    double sum = 0.0;
    for (const auto& v : values) {
        if (!v) continue;
        sum += *v;
        ++s.defined;
    }
    if (s.defined == 0) {
        s.mean = std::nan("");
        s.stddev = std::nan("");
        return s;
    }
    s.mean = sum / s.defined;
    if (s.defined > 1) {
        double sq = 0.0;
        for (const auto& v : values) {
            if (v) sq += (*v - s.mean) * (*v - s.mean);
        }
        s.stddev = std::sqrt(sq / (s.defined - 1));
    }
    return s;
}

double censored(const std::optional<int>& round, const ScenarioConfig& config) {
    return round ? static_cast<double>(*round) : static_cast<double>(config.max_rounds) + 1.0;
}

ComparisonReport compare(const ScenarioConfig& base, std::span<const Protocol> protocols, int replications,
                         int jobs) {
    if (replications < 1) throw ConfigError("replications must be >= 1");
    std::vector<ScenarioConfig> configs;
    for (Protocol p : protocols) {
        ScenarioConfig c = base;
        c.protocol = p;
        c.validate();
        configs.push_back(c);
    }

    ComparisonReport report;
    report.base = base;
    report.replications = replications;
    report.protocols.resize(protocols.size());

    const std::size_t tasks = protocols.size() * static_cast<std::size_t>(replications);
    std::vector<SimulationSummary> results(tasks);
    std::vector<std::exception_ptr> errors(tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            const std::size_t p = t / static_cast<std::size_t>(replications);
            const std::size_t k = t % static_cast<std::size_t>(replications);
            try {
                ScenarioConfig c = configs[p];
                c.seed = base.seed + k;
                results[t] = run_simulation(c);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const int workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(tasks, 1)));
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (std::size_t t = 0; t < tasks; ++t) {
        if (!errors[t]) continue;
        const std::size_t p = t / static_cast<std::size_t>(replications);
        const std::size_t k = t % static_cast<std::size_t>(replications);
        std::string what = "unknown error";
        try {
            std::rethrow_exception(errors[t]);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        throw std::runtime_error(std::string(to_string(protocols[p])) + " replication " + std::to_string(k) + ": " +
                                 what);
    }

    for (std::size_t p = 0; p < protocols.size(); ++p) {
        ProtocolReport& pr = report.protocols[p];
        pr.protocol = protocols[p];
        std::vector<std::optional<double>> fnd, hnd, lnd, packets;
        for (int k = 0; k < replications; ++k) {
            SimulationSummary& run = results[p * static_cast<std::size_t>(replications) + static_cast<std::size_t>(k)];
            fnd.push_back(as_double(run.fnd));
            hnd.push_back(as_double(run.hnd));
            lnd.push_back(as_double(run.lnd));
            packets.push_back(static_cast<double>(run.total_packets));
            pr.runs.push_back(std::move(run));
        }
        pr.fnd = aggregate(fnd);
        pr.hnd = aggregate(hnd);
        pr.lnd = aggregate(lnd);
        pr.packets = aggregate(packets);
        pr.mean_curve = mean_curve(pr.runs);
    }

    report.fnd_tally = tally(report.protocols, replications,
                             [&](const SimulationSummary& s) { return censored(s.fnd, base); });
    report.lnd_tally = tally(report.protocols, replications,
                             [&](const SimulationSummary& s) { return censored(s.lnd, base); });
    report.packets_tally = tally(report.protocols, replications,
                                 [](const SimulationSummary& s) { return static_cast<double>(s.total_packets); });
    return report;
}

std::string summary_row(const ProtocolReport& r) {
    std::string row(to_string(r.protocol));
    for (const Stat* s : {&r.fnd, &r.hnd, &r.lnd, &r.packets}) {
        row += ',' + fmt_stat(s->mean) + ',' + fmt_stat(s->stddev);
    }
    return row;
}

void write_summary(const ComparisonReport& report, const std::filesystem::path& path) {
    std::string out = "# hnd: round at which half of the nodes are dead (extension metric)\n";
    out += kSummaryHeader;
    out += '\n';
    for (const auto& p : report.protocols) out += summary_row(p) + '\n';
    write_text(path, out);
}

void write_mean_curve_csv(const ProtocolReport& report, const std::filesystem::path& path) {
    std::string out = "round,alive_mean,dead_mean,packets_cum_mean\n";
    char buf[128];
    for (const MeanCurvePoint& p : report.mean_curve) {
        std::snprintf(buf, sizeof buf, "%d,%.4f,%.4f,%.4f\n", p.round, p.alive, p.dead, p.packets_cum);
        out += buf;
    }
    write_text(path, out);
}

std::string format_tally(const ComparisonReport& report) {
    if (report.protocols.size() < 2) return "single protocol: no pairwise tallies\n";
    std::ostringstream out;
    format_one_tally(out, "FND tally", report, report.fnd_tally);
    out << '\n';
    format_one_tally(out, "LND tally", report, report.lnd_tally);
    out << '\n';
    format_one_tally(out, "Packets tally", report, report.packets_tally);
    return out.str();
}

void write_tally(const ComparisonReport& report, const std::filesystem::path& path) {
    write_text(path, format_tally(report));
}

}  // namespace wsnsim
