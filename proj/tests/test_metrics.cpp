#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wsnsim/metrics.hpp"

using namespace wsnsim;
namespace fs = std::filesystem;

namespace {

std::vector<RoundMetrics> series_from_dead(int n, const std::vector<int>& dead) {
    std::vector<RoundMetrics> out;
    long long cum = 0;
    for (std::size_t i = 0; i < dead.size(); ++i) {
        RoundMetrics m;
        m.round = static_cast<int>(i) + 1;
        m.dead = dead[i];
        m.alive = n - dead[i];
        m.ch_count = 1;
        m.packets_to_bs = m.alive;
        cum += m.packets_to_bs;
        m.packets_to_bs_cum = cum;
        m.residual_energy_total = 0.25 * m.alive + 1.0 / 3.0;
        out.push_back(m);
    }
    return out;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("wsnsim_test_metrics_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("summarize") {
    SUBCASE("no deaths leaves every milestone unset") {
        const auto s = summarize(series_from_dead(5, {0, 0, 0}));
        CHECK_FALSE(s.fnd);
        CHECK_FALSE(s.hnd);
        CHECK_FALSE(s.lnd);
        CHECK(s.total_packets == 15);
    }
    SUBCASE("first death") {
        const auto s = summarize(series_from_dead(4, {0, 0, 1, 3}));
        CHECK(s.fnd == 3);
        CHECK(s.hnd == 4);
        CHECK_FALSE(s.lnd);
    }
    SUBCASE("half uses the ceiling of n / 2") {
        const auto odd = summarize(series_from_dead(5, {1, 2, 3, 5}));
        CHECK(odd.hnd == 3);
        CHECK(odd.lnd == 4);
        const auto even = summarize(series_from_dead(4, {1, 2, 3, 4}));
        CHECK(even.hnd == 2);
    }
    SUBCASE("rounds after the last death do not change milestones") {
        const auto base = summarize(series_from_dead(3, {0, 1, 3}));
        const auto extended = summarize(series_from_dead(3, {0, 1, 3, 3, 3}));
        CHECK(base.fnd == extended.fnd);
        CHECK(base.hnd == extended.hnd);
        CHECK(base.lnd == extended.lnd);
    }
    SUBCASE("empty series") {
        const auto s = summarize({});
        CHECK_FALSE(s.fnd);
        CHECK(s.total_packets == 0);
    }
}

TEST_CASE("series CSV") {
    CHECK(series_csv({}) == std::string(kSeriesHeader) + "\n");

    const auto one = series_from_dead(4, {0});
    const std::string text = series_csv(one);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text == std::string(kSeriesHeader) + "\n1,4,0,1,4,4,1.333333333\n");

    const fs::path dir = scratch_dir("csv");
    const fs::path path = dir / "nested" / "series.csv";
    auto rows = series_from_dead(6, {0, 1, 2, 6});
    write_series_csv(rows, path);
    auto back = read_series_csv(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].round == rows[i].round);
        CHECK(back[i].dead == rows[i].dead);
        CHECK(back[i].packets_to_bs_cum == rows[i].packets_to_bs_cum);
        CHECK(back[i].residual_energy_total == doctest::Approx(rows[i].residual_energy_total).epsilon(1e-9));
    }
    CHECK_THROWS_AS(read_series_csv(dir / "missing.csv"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("aggregate") {
    const std::vector<std::optional<double>> values = {1.0, 2.0, std::nullopt, 4.0, 8.0};
    const Stat s = aggregate(values);
    CHECK(s.defined == 4);
    CHECK(s.mean == doctest::Approx(3.75));
    CHECK(s.stddev == doctest::Approx(std::sqrt(((2.75 * 2.75) + (1.75 * 1.75) + 0.0625 + (4.25 * 4.25)) / 3.0)));

    std::vector<std::optional<double>> shuffled = values;
    std::mt19937 gen(9);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        const Stat t = aggregate(shuffled);
        CHECK(t.mean == doctest::Approx(s.mean).epsilon(1e-12));
        CHECK(t.stddev == doctest::Approx(s.stddev).epsilon(1e-12));
    }

    const std::vector<std::optional<double>> single = {5.0};
    CHECK(aggregate(single).stddev == 0.0);
    const std::vector<std::optional<double>> none = {std::nullopt};
    CHECK(std::isnan(aggregate(none).mean));
}

TEST_CASE("censored") {
    ScenarioConfig c;
    c.max_rounds = 100;
    CHECK(censored(42, c) == 42.0);
    CHECK(censored(std::nullopt, c) == 101.0);
}

TEST_CASE("compare") {
    ScenarioConfig base;
    base.max_rounds = 600;

    SUBCASE("one replication has zero spread") {
        const Protocol one[] = {Protocol::Sep};
        const auto r = compare(base, one, 1);
        CHECK(r.protocols[0].packets.stddev == 0.0);
        CHECK(format_tally(r) == "single protocol: no pairwise tallies\n");
    }

    SUBCASE("the same protocol twice yields identical rows") {
        const Protocol twice[] = {Protocol::Deec, Protocol::Deec};
        const auto r = compare(base, twice, 3, 2);
        CHECK(summary_row(r.protocols[0]) == summary_row(r.protocols[1]));
        CHECK(r.fnd_tally[0][1] == 0);
        CHECK(r.packets_tally[1][0] == 0);
    }

    SUBCASE("threading does not change results") {
        const Protocol all[] = {Protocol::Leach, Protocol::Sep, Protocol::Esep, Protocol::Deec, Protocol::Ecrsep};
        const auto serial = compare(base, all, 3, 1);
        const auto parallel = compare(base, all, 3, 4);
        for (std::size_t p = 0; p < 5; ++p) {
            CHECK(summary_row(serial.protocols[p]) == summary_row(parallel.protocols[p]));
            for (int k = 0; k < 3; ++k) {
                CHECK(serial.protocols[p].runs[k].series == parallel.protocols[p].runs[k].series);
            }
        }
        CHECK(serial.packets_tally == parallel.packets_tally);
    }

    SUBCASE("replication k uses seed base + k") {
        const Protocol one[] = {Protocol::Leach};
        const auto r = compare(base, one, 2);
        ScenarioConfig c = base;
        c.protocol = Protocol::Leach;
        c.seed = base.seed + 1;
        CHECK(r.protocols[0].runs[1].series == run_simulation(c).series);
    }

    SUBCASE("invalid configuration is rejected before running") {
        base.m = 1.5;
        const Protocol one[] = {Protocol::Leach};
        CHECK_THROWS_AS(compare(base, one, 2), ConfigError);
        base.m = 0.1;
        CHECK_THROWS_AS(compare(base, one, 0), ConfigError);
    }
}

TEST_CASE("report files") {
    ScenarioConfig base;
    base.max_rounds = 200;
    const Protocol two[] = {Protocol::Leach, Protocol::Ecrsep};
    const auto r = compare(base, two, 2);
    const fs::path dir = scratch_dir("report");
    write_summary(r, dir / "summary.txt");
    write_mean_curve_csv(r.protocols[0], dir / "curve.csv");
    write_tally(r, dir / "tally.txt");

    const std::string summary = slurp(dir / "summary.txt");
    CHECK(summary.find(kSummaryHeader) != std::string::npos);
    CHECK(summary.find("\nleach,NA,NA,NA,NA,NA,NA,") != std::string::npos);
    CHECK(summary.find("\necrsep,") != std::string::npos);

    const std::string curve = slurp(dir / "curve.csv");
    CHECK(curve.rfind("round,alive_mean,dead_mean,packets_cum_mean\n1,100.0000,0.0000,", 0) == 0);
    CHECK(std::count(curve.begin(), curve.end(), '\n') == 201);

    const std::string tally = slurp(dir / "tally.txt");
    CHECK(tally.find("FND tally") != std::string::npos);
    CHECK(tally.find("Packets tally") != std::string::npos);
    fs::remove_all(dir);
}
