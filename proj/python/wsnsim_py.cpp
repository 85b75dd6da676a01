#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "wsnsim/engine.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/model.hpp"
#include "wsnsim/protocols.hpp"
#include "wsnsim/scenario.hpp"

namespace py = pybind11;
using namespace wsnsim;

PYBIND11_MODULE(wsnsim, m) {
    m.doc() = "Round-based clustering simulator for heterogeneous wireless sensor networks.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<Tier>(m, "Tier")
        .value("Normal", Tier::Normal)
        .value("Intermediate", Tier::Intermediate)
        .value("Advanced", Tier::Advanced);
    py::enum_<Protocol>(m, "Protocol")
        .value("LEACH", Protocol::Leach)
        .value("SEP", Protocol::Sep)
        .value("ESEP", Protocol::Esep)
        .value("DEEC", Protocol::Deec)
        .value("ECRSEP", Protocol::Ecrsep);
    py::enum_<EcrMode>(m, "EcrMode")
        .value("InverseNormalized", EcrMode::InverseNormalized)
        .value("AsWritten", EcrMode::AsWritten);

    m.def("parse_protocol", [](const std::string& s) { return parse_protocol(s); });
    m.def("protocol_name", [](Protocol p) { return std::string(to_string(p)); });
    m.attr("ALL_PROTOCOLS") = std::vector<Protocol>(std::begin(kAllProtocols), std::end(kAllProtocols));

    py::class_<Point>(m, "Point")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Point{x, y}; }), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y)
        .def("__repr__", [](const Point& p) {
            std::ostringstream s;
            s << "Point(" << p.x << ", " << p.y << ")";
            return s.str();
        });
    m.def("distance", &distance);

    py::class_<RadioModel>(m, "RadioModel")
        .def(py::init<>())
        .def_readwrite("e_elec", &RadioModel::e_elec)
        .def_readwrite("e_da", &RadioModel::e_da)
        .def_readwrite("eps_fs", &RadioModel::eps_fs)
        .def_readwrite("eps_mp", &RadioModel::eps_mp)
        .def_property_readonly("d0", &RadioModel::d0);

    m.def("tx_cost", &tx_cost, py::arg("radio"), py::arg("k_bits"), py::arg("d"));
    m.def("rx_cost", &rx_cost, py::arg("radio"), py::arg("k_bits"));
    m.def("aggregation_cost", &aggregation_cost, py::arg("radio"), py::arg("k_bits"), py::arg("signals"));

    py::class_<NodeState>(m, "NodeState")
        .def(py::init<>())
        .def_readwrite("id", &NodeState::id)
        .def_readwrite("position", &NodeState::position)
        .def_readwrite("tier", &NodeState::tier)
        .def_readwrite("initial_energy", &NodeState::initial_energy)
        .def_readwrite("residual_energy", &NodeState::residual_energy)
        .def_readwrite("alive", &NodeState::alive)
        .def_readwrite("ch_in_round", &NodeState::ch_in_round);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("n", &ScenarioConfig::n)
        .def_readwrite("field_width", &ScenarioConfig::field_width)
        .def_readwrite("field_height", &ScenarioConfig::field_height)
        .def_readwrite("sink_x", &ScenarioConfig::sink_x)
        .def_readwrite("sink_y", &ScenarioConfig::sink_y)
        .def_readwrite("m", &ScenarioConfig::m)
        .def_readwrite("alpha", &ScenarioConfig::alpha)
        .def_readwrite("esep_x", &ScenarioConfig::esep_x)
        .def_readwrite("esep_beta", &ScenarioConfig::esep_beta)
        .def_readwrite("e0", &ScenarioConfig::e0)
        .def_readwrite("p_opt", &ScenarioConfig::p_opt)
        .def_readwrite("k_bits", &ScenarioConfig::k_bits)
        .def_readwrite("radio", &ScenarioConfig::radio)
        .def_readwrite("max_rounds", &ScenarioConfig::max_rounds)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("protocol", &ScenarioConfig::protocol)
        .def_readwrite("ecr_mode", &ScenarioConfig::ecr_mode)
        .def("sink_position", &ScenarioConfig::sink_position)
        .def("validate", &ScenarioConfig::validate)
        .def("set", [](ScenarioConfig& c, const std::string& key, const std::string& value) {
            apply_setting(c, key, value);
        });

    m.def("total_initial_energy", &total_initial_energy);
    m.def("tier_count", &tier_count);
    m.def(
        "build_network",
        [](const ScenarioConfig& c) {
            Rng rng(c.seed);
            return build_network(c, rng);
        },
        "Places and energizes nodes exactly as a run seeded with config.seed does.");

    py::class_<ElectionContext>(m, "ElectionContext")
        .def(py::init<>())
        .def_readwrite("round", &ElectionContext::round)
        .def_readwrite("avg_residual_energy", &ElectionContext::avg_residual_energy)
        .def_readwrite("avg_ecr", &ElectionContext::avg_ecr)
        .def_readwrite("prev_round_chs", &ElectionContext::prev_round_chs);

    m.def("threshold", &threshold, py::arg("p"), py::arg("r"));
    m.def("epoch_length", &epoch_length);
    m.def("ecr", &ecr, py::arg("node"), py::arg("round"));
    m.def("election_probability", &election_probability, py::arg("node"), py::arg("ctx"), py::arg("config"));

    py::class_<RoundMetrics>(m, "RoundMetrics")
        .def_readonly("round", &RoundMetrics::round)
        .def_readonly("alive", &RoundMetrics::alive)
        .def_readonly("dead", &RoundMetrics::dead)
        .def_readonly("ch_count", &RoundMetrics::ch_count)
        .def_readonly("packets_to_bs", &RoundMetrics::packets_to_bs)
        .def_readonly("packets_to_bs_cum", &RoundMetrics::packets_to_bs_cum)
        .def_readonly("residual_energy_total", &RoundMetrics::residual_energy_total)
        .def_readonly("energy_debited", &RoundMetrics::energy_debited);

    py::class_<SimulationSummary>(m, "SimulationSummary")
        .def_readonly("fnd", &SimulationSummary::fnd)
        .def_readonly("hnd", &SimulationSummary::hnd)
        .def_readonly("lnd", &SimulationSummary::lnd)
        .def_readonly("total_packets", &SimulationSummary::total_packets)
        .def_readonly("series", &SimulationSummary::series)
        .def("csv", [](const SimulationSummary& s) { return series_csv(s.series); });

    py::class_<Simulation>(m, "Simulation")
        .def(py::init<ScenarioConfig>())
        .def("run_round", &Simulation::run_round)
        .def("finished", &Simulation::finished)
        .def("alive_count", &Simulation::alive_count)
        .def("residual_total", &Simulation::residual_total)
        .def_property_readonly("nodes", &Simulation::nodes)
        .def_property_readonly("last_cluster_heads", &Simulation::last_cluster_heads);

    m.def("run_simulation", [](const ScenarioConfig& c) {
        py::gil_scoped_release release;
        return run_simulation(c);
    });
    m.def("summarize", &summarize);
    m.def("series_csv", [](const std::vector<RoundMetrics>& s) { return series_csv(s); });
    m.def("write_series_csv",
          [](const std::vector<RoundMetrics>& s, const std::filesystem::path& p) { write_series_csv(s, p); });

    py::class_<Stat>(m, "Stat")
        .def_readonly("mean", &Stat::mean)
        .def_readonly("stddev", &Stat::stddev)
        .def_readonly("defined", &Stat::defined);
    py::class_<ProtocolReport>(m, "ProtocolReport")
        .def_readonly("protocol", &ProtocolReport::protocol)
        .def_readonly("runs", &ProtocolReport::runs)
        .def_readonly("fnd", &ProtocolReport::fnd)
        .def_readonly("hnd", &ProtocolReport::hnd)
        .def_readonly("lnd", &ProtocolReport::lnd)
        .def_readonly("packets", &ProtocolReport::packets);
    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("replications", &ComparisonReport::replications)
        .def_readonly("protocols", &ComparisonReport::protocols)
        .def_readonly("fnd_tally", &ComparisonReport::fnd_tally)
        .def_readonly("lnd_tally", &ComparisonReport::lnd_tally)
        .def_readonly("packets_tally", &ComparisonReport::packets_tally)
        .def("tally_text", &format_tally);

    m.def(
        "compare",
        [](const ScenarioConfig& base, const std::vector<Protocol>& protocols, int replications, int jobs) {
            py::gil_scoped_release release;
            return compare(base, protocols, replications, jobs);
        },
        py::arg("base"), py::arg("protocols"), py::arg("replications"), py::arg("jobs") = 1);

    m.def("load_scenario", [](const std::filesystem::path& p) { return load_scenario(p); });
    m.def("parse_scenario", [](const std::string& text) {
        std::istringstream in(text);
        return parse_scenario(in);
    });
}
