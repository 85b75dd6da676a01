#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string output;
};

Result run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + WSNSIM_CLI_PATH + " " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "wsnsim_test_cli";
    return dir;
}

struct Scratch {
    Scratch() { fs::remove_all(scratch()); }
    ~Scratch() { fs::remove_all(scratch()); }
};

}  // namespace

TEST_CASE_FIXTURE(Scratch, "missing scenario file exits 1 and names the path") {
    const auto r = run("run " + (scratch() / "absent.conf").string());
    CHECK(r.status == 1);
    CHECK(r.output.find("absent.conf") != std::string::npos);
}

TEST_CASE_FIXTURE(Scratch, "run is byte-for-byte reproducible") {
    const fs::path a = scratch() / "a", b = scratch() / "b";
    const auto ra = run("run --protocol ecrsep --seed 42 --rounds 800 --out " + a.string());
    const auto rb = run("run --protocol ecrsep --seed 42 --rounds 800 --out " + b.string());
    REQUIRE(ra.status == 0);
    REQUIRE(rb.status == 0);
    CHECK(ra.output.find("wrote " + (a / "ecrsep" / "seed42.csv").string()) != std::string::npos);
    CHECK(ra.output.find("fnd ") != std::string::npos);
    const std::string csv = slurp(a / "ecrsep" / "seed42.csv");
    CHECK(csv.size() > 1000);
    CHECK(csv == slurp(b / "ecrsep" / "seed42.csv"));
    CHECK(slurp(a / "summary.txt") == slurp(b / "summary.txt"));
}

TEST_CASE_FIXTURE(Scratch, "zero rounds writes a header-only CSV") {
    const auto r = run("run --rounds 0 --seed 3 --out " + scratch().string());
    CHECK(r.status == 0);
    CHECK(slurp(scratch() / "ecrsep" / "seed3.csv") ==
          "round,alive,dead,ch_count,packets_round,packets_cum,energy_residual_j\n");
}

TEST_CASE_FIXTURE(Scratch, "scenario file and flag precedence") {
    fs::create_directories(scratch());
    const fs::path conf = scratch() / "s.conf";
    std::ofstream(conf) << "protocol = deec\nseed = 5\nmax_rounds = 20\n";
    const auto r = run("run " + conf.string() + " --seed 6 --out " + scratch().string());
    CHECK(r.status == 0);
    CHECK(fs::exists(scratch() / "deec" / "seed6.csv"));

    std::ofstream(conf) << "bogus = 1\n";
    CHECK(run("run " + conf.string() + " --out " + scratch().string()).status == 2);
}

TEST_CASE_FIXTURE(Scratch, "output directory defaults to the environment") {
    const auto r = run("run --rounds 5", "WSNSIM_OUT_DIR=" + (scratch() / "env").string());
    CHECK(r.status == 0);
    CHECK(fs::exists(scratch() / "env" / "ecrsep" / "seed1.csv"));
}

TEST_CASE_FIXTURE(Scratch, "bad input exits 2") {
    const auto unknown = run("compare --protocols leach,teen --out " + scratch().string());
    CHECK(unknown.status == 2);
    CHECK(unknown.output.find("leach, sep, esep, deec, ecrsep") != std::string::npos);
    CHECK(run("run --set m=1.5 --out " + scratch().string()).status == 2);
    CHECK(run("sweep --param m --values 0.2,x --out " + scratch().string()).status == 2);
    CHECK(run("sweep --param e0 --values 1 --out " + scratch().string()).status == 2);
    CHECK(run("frobnicate").status == 2);

    const auto sweep = run("sweep --param m --values 0.2,1.5 --rounds 10 --out " + scratch().string());
    CHECK(sweep.status == 2);
    CHECK_FALSE(fs::exists(scratch()));
}

TEST_CASE_FIXTURE(Scratch, "single-value sweep matches compare") {
    const fs::path c = scratch() / "c", s = scratch() / "s";
    const auto rc = run("compare -R 2 -j 2 --rounds 400 --protocols sep,ecrsep --out " + c.string());
    const auto rs = run("sweep --param m --values 0.2 -R 2 --rounds 400 --protocols sep,ecrsep --out " + s.string());
    REQUIRE(rc.status == 0);
    REQUIRE(rs.status == 0);
    const fs::path point = s / "m_0.2";
    CHECK(slurp(c / "summary.txt") == slurp(point / "summary.txt"));
    CHECK(slurp(c / "tally.txt") == slurp(point / "tally.txt"));
    CHECK(slurp(c / "sep" / "seed2.csv") == slurp(point / "sep" / "seed2.csv"));
    CHECK(fs::exists(c / "ecrsep" / "mean_curve.csv"));
    CHECK(slurp(s / "sweep_summary.txt").find("\n0.2,sep,") != std::string::npos);
    CHECK(rc.output.find("wrote " + (c / "tally.txt").string()) != std::string::npos);
}

TEST_CASE_FIXTURE(Scratch, "single protocol compare has no tallies") {
    const auto r = run("compare -R 1 --rounds 50 --protocols leach --out " + scratch().string());
    CHECK(r.status == 0);
    CHECK(r.output.find("no pairwise tallies") != std::string::npos);
}
