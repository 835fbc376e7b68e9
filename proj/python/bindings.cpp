#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "flexplan/errors.hpp"
#include "flexplan/planner.hpp"

namespace py = pybind11;
using namespace flexplan;

namespace {

Span make_span(double length_km, double attenuation_db_per_km, double beta2_ps2_per_km, double gamma_per_w_km,
               double noise_figure_db) {
    Span s;
    s.fiber = FiberSpan{length_km, attenuation_db_per_km, beta2_ps2_per_km, gamma_per_w_km};
    s.amplifier = Amplifier{noise_figure_db, s.fiber.loss_db()};
    return s;
}

ChannelPlacement make_placement(std::vector<Channel> channels, double band_start_thz, double band_end_thz) {
    ChannelPlacement p{std::move(channels), BandWindow{band_start_thz, band_end_thz}};
    validate_placement(p);
    return p;
}

py::dict metrics_dict(const PeriodMetrics& m) {
    py::dict d;
    d["period"] = m.period + 1;
    d["requested_gbps"] = m.requested_gbps;
    d["served_gbps"] = m.served_gbps;
    d["blocked_gbps"] = m.blocked_gbps;
    d["trx_count"] = m.trx_count;
    d["regen_count"] = m.regen_count;
    d["eq_wavelengths_50ghz"] = m.eq_wavelengths_50ghz;
    d["lightpaths"] = m.lightpaths;
    d["c_band_overflow"] = m.c_band_overflow;
    d["gn_evaluations"] = m.gn_evaluations;
    d["groups_bounded"] = m.groups_bounded;
    d["spectrum_violations"] = m.spectrum_violations;
    return d;
}

ScenarioConfig configure(const std::filesystem::path& scenario, std::optional<bool> regen,
                         std::optional<std::size_t> periods, std::optional<double> margin_db,
                         std::optional<std::uint64_t> seed) {
    ScenarioConfig cfg = load_scenario(scenario);
    if (regen) cfg.regeneration.enabled = *regen;
    if (periods) cfg.periods = *periods;
    if (margin_db) cfg.margin_db = *margin_db;
    if (seed) cfg.seed = *seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-period flex-grid optical network planning";

    auto base = py::register_exception<Error>(m, "FlexplanError", PyExc_RuntimeError);
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<PlacementOverflow>(m, "PlacementOverflow", base.ptr());
    py::register_exception<RoutingInfeasible>(m, "RoutingInfeasible", base.ptr());

    py::class_<Span>(m, "Span")
        .def(py::init(&make_span), py::arg("length_km"), py::arg("attenuation_db_per_km") = 0.2,
             py::arg("beta2_ps2_per_km") = -21.7, py::arg("gamma_per_w_km") = 1.3, py::arg("noise_figure_db") = 5.0)
        .def_property_readonly("length_km", [](const Span& s) { return s.fiber.length_km; })
        .def_property_readonly("loss_db", [](const Span& s) { return s.fiber.loss_db(); })
        .def_property_readonly("noise_figure_db", [](const Span& s) { return s.amplifier.noise_figure_db; });

    py::class_<Channel>(m, "Channel")
        .def(py::init([](double f, double rs, double p) { return Channel{f, rs, p}; }), py::arg("center_thz"),
             py::arg("symbol_rate_gbd"), py::arg("launch_power_dbm") = 0.0)
        .def_readwrite("center_thz", &Channel::center_thz)
        .def_readwrite("symbol_rate_gbd", &Channel::symbol_rate_gbd)
        .def_readwrite("launch_power_dbm", &Channel::launch_power_dbm);

    py::class_<ChannelPlacement>(m, "ChannelPlacement")
        .def(py::init(&make_placement), py::arg("channels"), py::arg("band_start_thz") = 191.3,
             py::arg("band_end_thz") = 196.1)
        .def_readonly("channels", &ChannelPlacement::channels);

    py::class_<TrxConfig>(m, "TrxConfig")
        .def(py::init([](std::string id, Gbps rate, double bw, double rs, std::string mod, double osnr) {
                 return TrxConfig{std::move(id), rate, bw, rs, std::move(mod), osnr};
             }),
             py::arg("id"), py::arg("data_rate_gbps"), py::arg("bandwidth_ghz"), py::arg("symbol_rate_gbd"),
             py::arg("modulation") = "", py::arg("min_osnr_db") = 0.0)
        .def_readwrite("id", &TrxConfig::id)
        .def_readwrite("data_rate_gbps", &TrxConfig::data_rate_gbps)
        .def_readwrite("bandwidth_ghz", &TrxConfig::bandwidth_ghz)
        .def_readwrite("symbol_rate_gbd", &TrxConfig::symbol_rate_gbd)
        .def_readwrite("modulation", &TrxConfig::modulation)
        .def_readwrite("min_osnr_db", &TrxConfig::min_osnr_db)
        .def("__repr__", [](const TrxConfig& c) { return "<TrxConfig " + c.id + ">"; });

    m.def("load_catalog", [](const std::filesystem::path& p) { return load_catalog_file(p).configs; },
          py::arg("path"));

    m.def("ase_osnr",
          [](const std::vector<Span>& spans, double p, double ref, double f) { return ase_osnr(spans, p, ref, f); },
          py::arg("spans"), py::arg("launch_power_dbm"),
          py::arg("reference_bandwidth_ghz") = 12.5, py::arg("frequency_thz") = 193.4);

    m.def("gn_nli_power",
          [](const ChannelPlacement& p, const std::vector<Span>& spans, std::size_t ch, double rel_tol) {
              return gn_nli_power(p, spans, ch, QuadratureOptions{rel_tol});
          },
          py::arg("placement"), py::arg("spans"), py::arg("channel"), py::arg("rel_tol") = 1e-3,
          "NLI power in mW over the channel symbol-rate bandwidth.");

    m.def("gsnr",
          [](const ChannelPlacement& p, const std::vector<Span>& spans, std::size_t ch, double ref) {
              return gsnr(p, spans, ch, ref);
          },
          py::arg("placement"), py::arg("spans"), py::arg("channel"), py::arg("reference_bandwidth_ghz") = 12.5);

    m.def("lp_count_bounds",
          [](Gbps rate, const std::vector<TrxConfig>& admissible) { return lp_count_bounds(rate, admissible); },
          py::arg("rate_gbps"), py::arg("admissible"));

    m.def("min_bandwidth_multiset",
          [](Gbps rate, const std::vector<TrxConfig>& admissible) { return min_bandwidth_multiset(rate, admissible); },
          py::arg("rate_gbps"), py::arg("admissible"),
          "Fewest-GHz multiset of configs whose rates sum to at least rate_gbps.");

    m.def("shortest_route",
          [](const std::filesystem::path& topology, const std::string& src, const std::string& dst) {
              const Route r = shortest_route(load_topology_file(topology), src, dst);
              py::dict d;
              d["links"] = r.links;
              d["node_walk"] = r.node_walk;
              d["length_km"] = r.length_km;
              return d;
          },
          py::arg("topology"), py::arg("source"), py::arg("destination"));

    m.def("validate",
          [](const std::filesystem::path& scenario) { return load_inputs(load_scenario(scenario)).warnings; },
          py::arg("scenario"), "Loads and checks every input; returns warnings, raises on errors.");

    m.def("plan",
          [](const std::filesystem::path& scenario, std::optional<bool> regen, std::optional<std::size_t> periods,
             std::optional<double> margin_db, std::optional<std::uint64_t> seed,
             std::optional<std::filesystem::path> out, bool dump_spectrum) {
              const ScenarioConfig cfg = configure(scenario, regen, periods, margin_db, seed);
              PlanResult result;
              {
                  py::gil_scoped_release release;
                  result = run_plan(cfg);
                  if (out) emit_report(result, *out, dump_spectrum);
              }
              py::list rows;
              for (const auto& pm : result.periods) rows.append(metrics_dict(pm));
              return rows;
          },
          py::arg("scenario"), py::arg("regen") = py::none(), py::arg("periods") = py::none(),
          py::arg("margin_db") = py::none(), py::arg("seed") = py::none(), py::arg("out") = py::none(),
          py::arg("dump_spectrum") = false, "Runs a plan; returns one dict per period.");

    m.def("compare",
          [](const std::filesystem::path& a, const std::filesystem::path& b) {
              py::list rows;
              for (const auto& d : compare_runs(read_summary_csv(a / "summary.csv"), read_summary_csv(b / "summary.csv"))) {
                  py::dict row;
                  row["period"] = d.period + 1;
                  row["throughput"] = d.throughput;
                  row["trx_count"] = d.trx_count;
                  row["wavelengths"] = d.wavelengths;
                  rows.append(row);
              }
              return rows;
          },
          py::arg("a"), py::arg("b"), "(a - b) / b per period from two report directories.");
}
