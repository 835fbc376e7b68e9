#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexplan/qot.hpp"
#include "flexplan/topology.hpp"

namespace flexplan::fixtures {

inline std::filesystem::path source_dir() { return FLEXPLAN_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& rel) { return source_dir() / "tests" / "fixtures" / rel; }
inline std::filesystem::path data(const std::string& rel) { return source_dir() / "data" / rel; }

inline nlohmann::json read_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct GnCase {
    std::string name;
    bool homogeneous = false;
    std::vector<Span> spans;
    ChannelPlacement placement;
    std::size_t channel = 0;
};

inline Span span_from_json(const nlohmann::json& j) {
    Span s;
    s.fiber.length_km = j.at("length_km");
    s.fiber.attenuation_db_per_km = j.at("attenuation_db_per_km");
    s.fiber.beta2_ps2_per_km = j.at("beta2_ps2_per_km");
    s.fiber.gamma_per_w_km = j.at("gamma_per_w_km");
    s.amplifier.noise_figure_db = j.at("amp_noise_figure_db");
    s.amplifier.gain_db = s.fiber.loss_db();
    return s;
}

inline std::vector<GnCase> gn_cases(double* oracle_step_ghz = nullptr) {
    const auto doc = read_json(fixture("gn_cases.json"));
    if (oracle_step_ghz) *oracle_step_ghz = doc.at("oracle_step_ghz");
    std::vector<GnCase> out;
    for (const auto& jc : doc.at("cases")) {
        GnCase c;
        c.name = jc.at("name");
        c.homogeneous = jc.at("homogeneous");
        for (const auto& js : jc.at("spans")) c.spans.push_back(span_from_json(js));
        for (const auto& ch : jc.at("channels")) {
            c.placement.channels.push_back({ch.at("center_thz"), ch.at("symbol_rate_gbd"), ch.at("launch_power_dbm")});
        }
        c.channel = jc.at("channel");
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace flexplan::fixtures
