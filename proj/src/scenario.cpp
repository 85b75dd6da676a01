#include "wsnsim/scenario.hpp"

#include <charconv>
#include <fstream>

#include "wsnsim/metrics.hpp"

namespace wsnsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

double to_double(std::string_view key, std::string_view value) {
    // std::from_chars for double is not available on every toolchain we target.
    const std::string text(value);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) bad_value(key, value);
    return v;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
    return v;
}

}  // namespace

const std::vector<std::string_view>& scenario_keys() {
    static const std::vector<std::string_view> keys = {
        "n",      "field_width", "field_height", "sink_x", "sink_y",     "m",        "alpha",
        "esep_x", "esep_beta",   "e0",           "p_opt",  "k_bits",     "e_elec",   "e_da",
        "eps_fs", "eps_mp",      "max_rounds",   "seed",   "protocol",   "ecr_mode"};
    return keys;
}

void apply_setting(ScenarioConfig& c, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "n") c.n = to_int<int>(key, value);
    else if (key == "field_width") c.field_width = to_double(key, value);
    else if (key == "field_height") c.field_height = to_double(key, value);
    else if (key == "sink_x") c.sink_x = to_double(key, value);
    else if (key == "sink_y") c.sink_y = to_double(key, value);
    else if (key == "m") c.m = to_double(key, value);
    else if (key == "alpha") c.alpha = to_double(key, value);
    else if (key == "esep_x") c.esep_x = to_double(key, value);
    else if (key == "esep_beta") c.esep_beta = to_double(key, value);
    else if (key == "e0") c.e0 = to_double(key, value);
    else if (key == "p_opt") c.p_opt = to_double(key, value);
    else if (key == "k_bits") c.k_bits = to_double(key, value);
    else if (key == "e_elec") c.radio.e_elec = to_double(key, value);
    else if (key == "e_da") c.radio.e_da = to_double(key, value);
    else if (key == "eps_fs") c.radio.eps_fs = to_double(key, value);
    else if (key == "eps_mp") c.radio.eps_mp = to_double(key, value);
    else if (key == "max_rounds") c.max_rounds = to_int<int>(key, value);
    else if (key == "seed") c.seed = to_int<std::uint64_t>(key, value);
    else if (key == "protocol") c.protocol = parse_protocol(value);
    else if (key == "ecr_mode") c.ecr_mode = parse_ecr_mode(value);
    else throw ConfigError("unknown scenario key '" + std::string(key) + "'");
}

ScenarioConfig parse_scenario(std::istream& in, ScenarioConfig base, const std::string& source) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text(line);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_setting(base, trim(text.substr(0, eq)), text.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

ScenarioConfig load_scenario(const std::filesystem::path& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario file " + path.string());
    return parse_scenario(in, std::move(base), path.string());
}

}  // namespace wsnsim
