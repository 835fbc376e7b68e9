#include "flexplan/qot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flexplan/errors.hpp"
#include "flexplan/transceiver.hpp"

namespace flexplan {

namespace {

constexpr double kPi = std::numbers::pi;

// Power attenuation in 1/m from dB/km.
double alpha_per_m(double db_per_km) { return db_per_km * std::numbers::ln10 / 10.0 / 1000.0; }

struct SpectralBlock {
    double lo = 0.0;   // Hz, offset from the channel under test
    double hi = 0.0;
    double psd = 0.0;  // W/Hz
};

/// |mu|^2 link kernel of a single span with lumped, loss-compensating gain.
struct SpanKernel {
    double alpha;      // 1/m, power
    double length;     // m
    double k;          // 4 pi^2 beta2, s^2/m
    double e1;         // exp(-alpha L)
    double e2;         // exp(-2 alpha L)

    explicit SpanKernel(const FiberSpan& f)
        : alpha(alpha_per_m(f.attenuation_db_per_km)),
          length(f.length_km * 1e3),
          k(4.0 * kPi * kPi * f.beta2_ps2_per_km * 1e-27),
          e1(std::exp(-alpha * length)),
          e2(std::exp(-2.0 * alpha * length)) {}

    double operator()(double xy) const {
        const double phase = k * xy;
        return (1.0 + e2 - 2.0 * e1 * std::cos(phase * length)) / (alpha * alpha + phase * phase);
    }
};

std::vector<SpectralBlock> blocks_relative_to(const ChannelPlacement& placement, std::size_t channel) {
    const double f0 = placement.channels.at(channel).center_thz * 1e12;
    std::vector<SpectralBlock> blocks;
    blocks.reserve(placement.channels.size());
    for (const auto& ch : placement.channels) {
        const double r = ch.symbol_rate_gbd * 1e9;
        const double p = units::dbm_to_mw(ch.launch_power_dbm) * 1e-3;
        const double c = ch.center_thz * 1e12 - f0;
        blocks.push_back({c - r / 2.0, c + r / 2.0, p / r});
    }
    return blocks;
}

void sort_unique(std::vector<double>& v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    v = std::move(out);
}

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;

}  // namespace

void validate_placement(const ChannelPlacement& placement) {
    constexpr double eps_thz = 1e-9;
    std::vector<const Channel*> sorted;
    for (const auto& ch : placement.channels) {
        if (!std::isfinite(ch.launch_power_dbm) || !std::isfinite(ch.center_thz) || !std::isfinite(ch.symbol_rate_gbd)) {
            throw ValidationError("channel parameters must be finite");
        }
        if (ch.symbol_rate_gbd <= 0.0) throw ValidationError("symbol rate must be positive");
        const double half = ch.symbol_rate_gbd * 1e-3 / 2.0;
        if (ch.center_thz - half < placement.band.start_thz - eps_thz ||
            ch.center_thz + half > placement.band.end_thz + eps_thz) {
            throw ValidationError("channel at " + std::to_string(ch.center_thz) + " THz leaves the band");
        }
        sorted.push_back(&ch);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->center_thz < b->center_thz; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double gap = sorted[i]->center_thz - sorted[i - 1]->center_thz;
        const double need = (sorted[i]->symbol_rate_gbd + sorted[i - 1]->symbol_rate_gbd) * 1e-3 / 2.0;
        if (gap < need - eps_thz) throw ValidationError("channels overlap spectrally");
    }
}

double ase_power_mw(std::span<const Span> spans, double reference_bandwidth_ghz, double frequency_thz) {
    const double h_nu_b = units::kPlanck * frequency_thz * 1e12 * reference_bandwidth_ghz * 1e9;  // W
    double total = 0.0;
    for (const auto& s : spans) {
        total += units::db_to_lin(s.amplifier.gain_db) * units::db_to_lin(s.amplifier.noise_figure_db) * h_nu_b;
    }
    return total * 1e3;
}

double ase_osnr(std::span<const Span> spans, double launch_power_dbm, double reference_bandwidth_ghz,
                double frequency_thz) {
    return units::lin_to_db(units::dbm_to_mw(launch_power_dbm) /
                            ase_power_mw(spans, reference_bandwidth_ghz, frequency_thz));
}

double gn_nli_psd_span(const ChannelPlacement& placement, std::size_t channel, const FiberSpan& fiber,
                       const QuadratureOptions& options) {
    if (channel >= placement.channels.size()) throw ValidationError("channel index out of range");
    if (fiber.gamma_per_w_km == 0.0) return 0.0;

    const SpanKernel kernel(fiber);
    const std::vector<SpectralBlock> blocks = blocks_relative_to(placement, channel);
    const double inner_tol = options.rel_tol * 0.1;
    constexpr unsigned inner_depth = 12;

    // Integrate kernel(x*y) dy over [a, b], splitting at the y = 0 ridge.
    auto inner_piece = [&](double x, double a, double b) {
        auto f = [&](double y) { return kernel(x * y); };
        if (a < 0.0 && b > 0.0) {
            return Quadrature::integrate(f, a, 0.0, inner_depth, inner_tol) +
                   Quadrature::integrate(f, 0.0, b, inner_depth, inner_tol);
        }
        return Quadrature::integrate(f, a, b, inner_depth, inner_tol);
    };

    // For fixed x: sum over (k2, k3) of psd2 * psd3 * integral over
    // {y in block k2, x + y in block k3}.
    auto inner = [&](double x) {
        double sum = 0.0;
        for (const auto& b2 : blocks) {
            for (const auto& b3 : blocks) {
                const double a = std::max(b2.lo, b3.lo - x);
                const double b = std::min(b2.hi, b3.hi - x);
                if (b > a) sum += b2.psd * b3.psd * inner_piece(x, a, b);
            }
        }
        return sum;
    };

    // Outer breakpoints: block edges, the x = 0 ridge, and every x at which an
    // inner limit switches between a block edge and a shifted block edge.
    std::vector<double> breaks{0.0};
    for (const auto& b : blocks) {
        breaks.push_back(b.lo);
        breaks.push_back(b.hi);
    }
    for (const auto& b2 : blocks) {
        for (const auto& b3 : blocks) {
            breaks.push_back(b3.lo - b2.lo);
            breaks.push_back(b3.lo - b2.hi);
            breaks.push_back(b3.hi - b2.lo);
            breaks.push_back(b3.hi - b2.hi);
        }
    }
    sort_unique(breaks, 1.0);

    double total = 0.0;
    double total_error = 0.0;
    for (const auto& b1 : blocks) {
        auto lo_it = std::upper_bound(breaks.begin(), breaks.end(), b1.lo + 1.0);
        double a = b1.lo;
        for (auto it = lo_it; a < b1.hi; ++it) {
            const double b = (it == breaks.end() || *it > b1.hi - 1.0) ? b1.hi : *it;
            double err = 0.0;
            total += b1.psd * Quadrature::integrate(inner, a, b, options.max_depth, options.rel_tol, &err);
            total_error += b1.psd * err;
            a = b;
        }
    }

    const double gamma = fiber.gamma_per_w_km * 1e-3;
    const double scale = 16.0 / 27.0 * gamma * gamma;
    // Relax slightly: the Kronrod error estimate is pessimistic on smooth pieces.
    if (!(total_error <= 10.0 * options.rel_tol * std::abs(total)) || !std::isfinite(total)) {
        throw NumericalError("GN quadrature did not converge", scale * total, scale * total_error);
    }
    return scale * total;
}

double gn_nli_psd(const ChannelPlacement& placement, std::size_t channel, std::span<const Span> spans,
                  const QuadratureOptions& options, const NliCorrection& correction) {
    double total = 0.0;
    for (const auto& s : spans) {
        total += gn_nli_psd_span(placement, channel, s.fiber, options);
        if (correction) total += correction(placement, channel, s);
    }
    return total;
}

double gn_nli_power(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel,
                    const QuadratureOptions& options, const NliCorrection& correction) {
    validate_placement(placement);
    const double psd = gn_nli_psd(placement, channel, spans, options, correction);
    return psd * placement.channels[channel].symbol_rate_gbd * 1e9 * 1e3;
}

NoiseBudget noise_budget(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel,
                         double reference_bandwidth_ghz, const QuadratureOptions& options,
                         const NliCorrection& correction) {
    validate_placement(placement);
    if (channel >= placement.channels.size()) throw ValidationError("channel index out of range");
    const Channel& ch = placement.channels[channel];
    NoiseBudget nb;
    nb.p_signal_mw = units::dbm_to_mw(ch.launch_power_dbm);
    nb.p_ase_mw = ase_power_mw(spans, reference_bandwidth_ghz, ch.center_thz);
    nb.p_nli_mw = gn_nli_psd(placement, channel, spans, options, correction) * reference_bandwidth_ghz * 1e9 * 1e3;
    return nb;
}

double gsnr(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel,
            double reference_bandwidth_ghz, const QuadratureOptions& options, const NliCorrection& correction) {
    return noise_budget(placement, spans, channel, reference_bandwidth_ghz, options, correction).gsnr_db();
}

ChannelPlacement homogeneous_placement(const TrxConfig& config, std::size_t count, const QotSettings& settings) {
    if (count == 0) throw ValidationError("placement needs at least one channel");
    const double slots = std::ceil(config.bandwidth_ghz / units::kGridSlotGhz - 1e-9);
    const double spacing_thz = slots * units::kGridSlotGhz * 1e-3;
    const double width = settings.c_band.end_thz - settings.c_band.start_thz;
    if (static_cast<double>(count) * spacing_thz > width + 1e-9) {
        throw PlacementOverflow(std::to_string(count) + " channels of " + config.id + " exceed the band");
    }
    ChannelPlacement placement;
    placement.band = settings.c_band;
    const double mid = (static_cast<double>(count) - 1.0) / 2.0;
    for (std::size_t k = 0; k < count; ++k) {
        placement.channels.push_back({settings.placement_center_thz + (static_cast<double>(k) - mid) * spacing_thz,
                                      config.symbol_rate_gbd, settings.launch_power_dbm});
    }
    return placement;
}

GnEngine::GnEngine(QotSettings settings, NliCorrection correction)
    : settings_(std::move(settings)), correction_(std::move(correction)) {}

double GnEngine::span_psd(const ChannelPlacement& placement, std::size_t channel, const FiberSpan& fiber) {
    std::vector<double> key{fiber.length_km, fiber.attenuation_db_per_km, fiber.beta2_ps2_per_km,
                            fiber.gamma_per_w_km};
    const double f0 = placement.channels[channel].center_thz;
    for (const auto& ch : placement.channels) {
        key.push_back(ch.center_thz - f0);
        key.push_back(ch.symbol_rate_gbd);
        key.push_back(ch.launch_power_dbm);
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const double value = gn_nli_psd_span(placement, channel, fiber, settings_.quadrature);
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), value);
    return value;
}

double GnEngine::gsnr(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel) {
    validate_placement(placement);
    if (channel >= placement.channels.size()) throw ValidationError("channel index out of range");
    ++evaluations_;
    const Channel& ch = placement.channels[channel];
    double psd = 0.0;
    for (const auto& s : spans) {
        psd += span_psd(placement, channel, s.fiber);
        if (correction_) psd += correction_(placement, channel, s);
    }
    NoiseBudget nb;
    nb.p_signal_mw = units::dbm_to_mw(ch.launch_power_dbm);
    nb.p_ase_mw = ase_power_mw(spans, settings_.reference_bandwidth_ghz, ch.center_thz);
    nb.p_nli_mw = psd * settings_.reference_bandwidth_ghz * 1e9 * 1e3;
    return nb.gsnr_db();
}

GsnrBound gsnr_bounds(const GroupedDemand& group, std::span<const TrxConfig> admissible_by_osnr, std::size_t period,
                      std::span<const Span> spans, GnEngine& engine) {
    if (admissible_by_osnr.empty()) throw BoundUnavailable("no admissible configuration for " + group.key.str());
    const Gbps rate = group.rate_by_period.at(period);

    const TrxConfig* lo = &admissible_by_osnr.front();
    const TrxConfig* hi = &admissible_by_osnr.front();
    for (const auto& c : admissible_by_osnr) {
        if (c.data_rate_gbps < lo->data_rate_gbps) lo = &c;
        if (c.data_rate_gbps > hi->data_rate_gbps) hi = &c;
    }

    GsnrBound bound;
    bound.group_key = group.key.str();
    bound.period = period;
    std::vector<double> values;
    auto evaluate = [&](const TrxConfig& c, std::string& id_out, std::size_t& n_out) {
        const auto n = static_cast<std::size_t>(std::max<Gbps>(1, (rate + c.data_rate_gbps - 1) / c.data_rate_gbps));
        ChannelPlacement placement;
        try {
            placement = homogeneous_placement(c, n, engine.settings());
        } catch (const PlacementOverflow&) {
            return;
        }
        values.push_back(engine.gsnr(placement, spans, n / 2));
        ++bound.evaluations;
        id_out = c.id;
        n_out = n;
    };
    evaluate(*lo, bound.min_rate_config, bound.min_rate_channels);
    evaluate(*hi, bound.max_rate_config, bound.max_rate_channels);

    if (values.empty()) throw BoundUnavailable("both bounding placements overflow the band for " + group.key.str());
    bound.lower_db = *std::min_element(values.begin(), values.end());
    bound.upper_db = *std::max_element(values.begin(), values.end());
    return bound;
}

}  // namespace flexplan
