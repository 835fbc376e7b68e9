#include <gtest/gtest.h>

#include <random>

#include "flexplan/errors.hpp"
#include "flexplan/routing.hpp"
#include "oracles/exhaustive.hpp"
#include "support/fixtures.hpp"

using namespace flexplan;
using nlohmann::json;

namespace {

NetworkTopology chain(const std::vector<double>& lengths) {
    json doc = {{"schema_version", 1}, {"nodes", json::array()}, {"links", json::array()}};
    for (std::size_t i = 0; i <= lengths.size(); ++i) doc["nodes"].push_back({{"id", "n" + std::to_string(i)}});
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        doc["links"].push_back({{"id", "l" + std::to_string(i)},
                                {"endpoints", {"n" + std::to_string(i), "n" + std::to_string(i + 1)}},
                                {"spans",
                                 {{{"length_km", lengths[i]},
                                   {"attenuation_db_per_km", 0.2},
                                   {"beta2_ps2_per_km", -21.7},
                                   {"gamma_per_w_km", 1.3},
                                   {"amp_noise_figure_db", 5.0}}}}});
    }
    return load_topology(doc);
}

TrafficDemand demand(const std::string& s, const std::string& d) { return {"td", s, d, {100}}; }

}  // namespace

TEST(Routing, MatchesAllSimplePathsOnGermany17) {
    const NetworkTopology t = load_topology_file(fixtures::data("germany17/topology.json"));
    for (const auto& a : t.nodes()) {
        for (const auto& b : t.nodes()) {
            if (a.id >= b.id) continue;
            const Route r = shortest_route(t, a.id, b.id);
            auto paths = oracle::all_simple_paths(t, a.id, b.id);
            ASSERT_FALSE(paths.empty());
            double best = paths.front().length;
            for (const auto& p : paths) best = std::min(best, p.length);
            std::vector<std::string> expected;
            for (const auto& p : paths) {
                if (p.length <= best + 1e-9 && (expected.empty() || p.walk < expected)) expected = p.walk;
            }
            EXPECT_NEAR(r.length_km, best, 1e-9) << a.id << "-" << b.id;
            EXPECT_EQ(r.node_walk, expected) << a.id << "-" << b.id;
            EXPECT_DOUBLE_EQ(path_length(t, r.links), r.length_km);
        }
    }
}

TEST(Routing, TieBrokenLexicographically) {
    // Square A-B-D and A-C-D of equal length.
    json doc = {{"schema_version", 1},
                {"nodes", {{{"id", "A"}}, {{"id", "C"}}, {{"id", "B"}}, {{"id", "D"}}}},
                {"links", json::array()}};
    for (auto [id, x, y] : {std::tuple{"ac", "A", "C"}, {"cd", "C", "D"}, {"ab", "A", "B"}, {"bd", "B", "D"}}) {
        doc["links"].push_back({{"id", id},
                                {"endpoints", {x, y}},
                                {"spans",
                                 {{{"length_km", 50},
                                   {"attenuation_db_per_km", 0.2},
                                   {"beta2_ps2_per_km", -21.7},
                                   {"gamma_per_w_km", 1.3},
                                   {"amp_noise_figure_db", 5.0}}}}});
    }
    const NetworkTopology t = load_topology(doc);
    EXPECT_EQ(shortest_route(t, "A", "D").node_walk, (std::vector<std::string>{"A", "B", "D"}));
    EXPECT_EQ(shortest_route(t, "D", "A").node_walk, (std::vector<std::string>{"D", "B", "A"}));
}

TEST(Routing, DisconnectedThrows) {
    json doc = fixtures::read_json(fixtures::fixture("two_node/topology.json"));
    doc["nodes"].push_back({{"id", "Z"}});
    const NetworkTopology t = load_topology(doc);
    EXPECT_THROW(shortest_route(t, "A", "Z"), RoutingInfeasible);
    EXPECT_THROW(shortest_route(t, "A", "A"), RoutingInfeasible);
    EXPECT_THROW(shortest_route(t, "A", "Q"), ValidationError);
}

TEST(Regeneration, Fig3SplitsAtN1) {
    const NetworkTopology t = load_topology_file(fixtures::fixture("fig3/topology.json"));
    const Route r = shortest_route(t, "N3", "N2");
    const TrafficDemand d{"TD2", "N3", "N2", {400}};
    const RegeneratedDemand rd = place_regenerators(t, d, r, ReachLimits{600, 4});
    EXPECT_EQ(rd.regen_nodes, (std::vector<std::string>{"N1"}));
    ASSERT_EQ(rd.segments.size(), 2u);
    EXPECT_EQ(rd.segments[0].demand.id, "TD2#0");
    EXPECT_EQ(rd.segments[0].route.node_walk, (std::vector<std::string>{"N3", "N1"}));
    EXPECT_EQ(rd.segments[1].route.node_walk, (std::vector<std::string>{"N1", "N2"}));
    EXPECT_EQ(rd.segments[0].demand.rate_by_period, (std::vector<Gbps>{400}));
    EXPECT_EQ(rd.segments[1].demand.rate_by_period, (std::vector<Gbps>{400}));

    const RegeneratedDemand direct = place_regenerators(t, {"TD1", "N3", "N1", {400}}, shortest_route(t, "N3", "N1"),
                                                        ReachLimits{600, 4});
    EXPECT_TRUE(direct.regen_nodes.empty());
    ASSERT_EQ(direct.segments.size(), 1u);
    EXPECT_EQ(direct.segments[0].demand.id, "TD1");
}

TEST(Regeneration, LinkLongerThanReach) {
    const NetworkTopology t = chain({100, 700, 100});
    EXPECT_THROW(place_regenerators(t, demand("n0", "n3"), shortest_route(t, "n0", "n3"), {600, 4}),
                 RegenerationInfeasible);
}

TEST(Regeneration, HopLimitAlone) {
    const NetworkTopology t = chain(std::vector<double>(7, 10.0));
    const RegeneratedDemand rd = place_regenerators(t, demand("n0", "n7"), shortest_route(t, "n0", "n7"), {600, 2});
    EXPECT_EQ(rd.regen_nodes, (std::vector<std::string>{"n3", "n6"}));
    for (const auto& s : rd.segments) EXPECT_LE(s.route.hop_count, 2);
}

TEST(Regeneration, GreedyMatchesBruteForceOnChains) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> n_links(1, 13);
    std::uniform_int_distribution<int> len10(3, 40);
    std::uniform_int_distribution<int> hops(1, 5);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<double> lengths(static_cast<std::size_t>(n_links(rng)));
        for (auto& l : lengths) l = 10.0 * len10(rng);
        const ReachLimits lim{600.0, hops(rng)};
        const int expected = oracle::min_regenerators(lengths, lim.max_length_km, lim.max_intermediate_nodes);
        const NetworkTopology t = chain(lengths);
        const std::string dst = "n" + std::to_string(lengths.size());
        const Route r = shortest_route(t, "n0", dst);
        if (expected < 0) {
            EXPECT_THROW(place_regenerators(t, demand("n0", dst), r, lim), RegenerationInfeasible);
            continue;
        }
        const RegeneratedDemand rd = place_regenerators(t, demand("n0", dst), r, lim);
        EXPECT_EQ(static_cast<int>(rd.regen_nodes.size()), expected) << "trial " << trial;
        for (const auto& s : rd.segments) {
            EXPECT_TRUE(within_limits(s.route, lim)) << "trial " << trial;
        }
        EXPECT_EQ(rd.segments.front().route.source(), "n0");
        EXPECT_EQ(rd.segments.back().route.destination(), dst);
        ++checked;
    }
    EXPECT_GT(checked, 300);
}

TEST(Regeneration, Germany17SegmentsWithinLimits) {
    const NetworkTopology t = load_topology_file(fixtures::data("germany17/topology.json"));
    const ReachLimits lim{600, 4};
    for (const auto& a : t.nodes()) {
        for (const auto& b : t.nodes()) {
            if (a.id == b.id) continue;
            const Route r = shortest_route(t, a.id, b.id);
            const RegeneratedDemand rd = place_regenerators(t, demand(a.id, b.id), r, lim);
            for (const auto& s : rd.segments) ASSERT_TRUE(within_limits(s.route, lim));
            if (within_limits(r, lim)) EXPECT_TRUE(rd.regen_nodes.empty());
        }
    }
}
