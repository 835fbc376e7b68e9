#pragma once

// Dense uniform-grid midpoint evaluation of the single-span GN integral.
// Written independently of the library quadrature: the PSD, the link kernel
// and the unit conversions are all recomputed here from the defining formula.

#include <cmath>
#include <numbers>
#include <vector>

#include "flexplan/qot.hpp"

namespace flexplan::oracle {

struct GridChannel {
    double center_hz;
    double rate_hz;
    double power_w;
};

inline double gn_psd_bruteforce(const ChannelPlacement& placement, std::size_t channel, const FiberSpan& fiber,
                                double step_hz) {
    std::vector<GridChannel> chans;
    for (const auto& c : placement.channels) {
        chans.push_back({c.center_thz * 1e12, c.symbol_rate_gbd * 1e9, std::pow(10.0, c.launch_power_dbm / 10.0) * 1e-3});
    }
    const double fi = chans.at(channel).center_hz;
    auto psd = [&](double f) {
        double g = 0.0;
        for (const auto& c : chans) {
            if (std::abs(f - c.center_hz) < c.rate_hz / 2.0) g += c.power_w / c.rate_hz;
        }
        return g;
    };

    const double alpha = fiber.attenuation_db_per_km / (10.0 * std::log10(std::exp(1.0))) / 1000.0;
    const double L = fiber.length_km * 1000.0;
    const double beta2 = fiber.beta2_ps2_per_km * 1e-24 / 1e3;
    const double gamma = fiber.gamma_per_w_km / 1e3;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double loss_once = std::exp(-alpha * L);
    const double loss_twice = std::exp(-2.0 * alpha * L);

    double fmin = chans.front().center_hz, fmax = fmin;
    for (const auto& c : chans) {
        fmin = std::min(fmin, c.center_hz - c.rate_hz / 2.0);
        fmax = std::max(fmax, c.center_hz + c.rate_hz / 2.0);
    }
    const auto n = static_cast<long>(std::ceil((fmax - fmin) / step_hz));

    // Precompute the PSD on the grid once.
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long a = 0; a < n; ++a) g[static_cast<std::size_t>(a)] = psd(fmin + (static_cast<double>(a) + 0.5) * step_hz);

    double sum = 0.0;
    for (long a = 0; a < n; ++a) {
        const double g1 = g[static_cast<std::size_t>(a)];
        if (g1 == 0.0) continue;
        const double f1 = fmin + (static_cast<double>(a) + 0.5) * step_hz;
        for (long b = 0; b < n; ++b) {
            const double g2 = g[static_cast<std::size_t>(b)];
            if (g2 == 0.0) continue;
            const double f2 = fmin + (static_cast<double>(b) + 0.5) * step_hz;
            const double g3 = psd(f1 + f2 - fi);
            if (g3 == 0.0) continue;
            const double d = 4.0 * pi2 * beta2 * (f1 - fi) * (f2 - fi);
            const double mu2 = (1.0 + loss_twice - 2.0 * loss_once * std::cos(d * L)) /
                               (alpha * alpha + d * d);
            sum += g1 * g2 * g3 * mu2;
        }
    }
    return 16.0 / 27.0 * gamma * gamma * sum * step_hz * step_hz;
}

}  // namespace flexplan::oracle
