#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flexplan/errors.hpp"
#include "flexplan/planner.hpp"

namespace {

int run_plan_command(const std::string& scenario_path, const std::string& regen, std::optional<std::size_t> periods,
                     std::optional<double> margin, std::optional<std::uint64_t> seed, const std::string& out,
                     bool dump) {
    flexplan::ScenarioConfig cfg = flexplan::load_scenario(scenario_path);
    if (regen == "on") cfg.regeneration.enabled = true;
    if (regen == "off") cfg.regeneration.enabled = false;
    if (periods) cfg.periods = *periods;
    if (margin) cfg.margin_db = *margin;
    if (seed) cfg.seed = *seed;
    if (!out.empty()) cfg.output_dir = out;
    if (dump) cfg.dump_spectrum = true;

    const flexplan::Scenario scenario = flexplan::load_inputs(cfg);
    for (const auto& w : scenario.warnings) std::cerr << "warning: " << w << '\n';

    const flexplan::PlanResult result = flexplan::run_plan(scenario);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    flexplan::emit_report(result, cfg.output_dir, cfg.dump_spectrum);

    std::cout << flexplan::summary_csv(result);
    std::cout << "wrote " << cfg.output_dir.string() << '\n';
    return 0;
}

int run_compare_command(const std::string& a, const std::string& b, const std::string& out) {
    const auto ma = flexplan::read_summary_csv(std::filesystem::path(a) / "summary.csv");
    const auto mb = flexplan::read_summary_csv(std::filesystem::path(b) / "summary.csv");
    const std::string table = flexplan::comparison_csv(flexplan::compare_runs(ma, mb));
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw flexplan::IoError("cannot write " + out);
    f << table;
    std::cout << table;
    return 0;
}

int run_validate_command(const std::string& scenario_path) {
    const flexplan::Scenario scenario = flexplan::load_inputs(flexplan::load_scenario(scenario_path));
    for (const auto& w : scenario.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "ok: " << scenario.topology.nodes().size() << " nodes, " << scenario.topology.links().size()
              << " links, " << scenario.demands.size() << " demands, " << scenario.catalog.configs.size()
              << " configs\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flex-grid multi-period network planner"};
    app.require_subcommand(1);

    std::string scenario, regen, out;
    std::optional<std::size_t> periods;
    std::optional<double> margin;
    std::optional<std::uint64_t> seed;
    bool dump = false;
    auto* plan = app.add_subcommand("plan", "run a multi-period plan");
    plan->add_option("--scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    plan->add_option("--regen", regen, "override regeneration")->check(CLI::IsMember({"on", "off"}));
    plan->add_option("--periods", periods, "number of planning periods")->check(CLI::PositiveNumber);
    plan->add_option("--margin-db", margin, "system margin in dB")->check(CLI::NonNegativeNumber);
    plan->add_option("--seed", seed, "traffic jitter seed");
    plan->add_option("--out", out, "output directory");
    plan->add_flag("--dump-spectrum", dump, "also write spectrum.json");

    std::string dir_a, dir_b, cmp_out;
    auto* compare = app.add_subcommand("compare", "relative difference of two runs, (a - b) / b");
    compare->add_option("--a", dir_a)->required()->check(CLI::ExistingDirectory);
    compare->add_option("--b", dir_b)->required()->check(CLI::ExistingDirectory);
    compare->add_option("--out", cmp_out)->required();

    std::string val_scenario;
    auto* validate = app.add_subcommand("validate", "schema and invariant check only");
    validate->add_option("--scenario", val_scenario)->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan) return run_plan_command(scenario, regen, periods, margin, seed, out, dump);
        if (*compare) return run_compare_command(dir_a, dir_b, cmp_out);
        if (*validate) return run_validate_command(val_scenario);
    } catch (const flexplan::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 2;
    } catch (const flexplan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 1;
}
