#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "flexplan/topology.hpp"
#include "flexplan/traffic.hpp"

namespace flexplan {

struct TrxConfig;

namespace units {
inline constexpr double kPlanck = 6.62607015e-34;  // J·s
inline constexpr double kGridSlotGhz = 12.5;

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
}  // namespace units

struct Channel {
    double center_thz = 193.7;
    double symbol_rate_gbd = 32.0;
    double launch_power_dbm = 0.0;
};

struct BandWindow {
    double start_thz = 191.3;
    double end_thz = 196.1;
};

struct ChannelPlacement {
    std::vector<Channel> channels;
    BandWindow band;
};

/// Throws ValidationError when a channel leaves the band, two channels
/// overlap, or a power is not finite.
void validate_placement(const ChannelPlacement& placement);

/// Additive per-span correction to the NLI PSD in W/Hz (modulation-format
/// terms on top of the GN integral). Empty means none.
using NliCorrection = std::function<double(const ChannelPlacement&, std::size_t channel, const Span&)>;

struct QuadratureOptions {
    double rel_tol = 1e-3;
    unsigned max_depth = 15;  // bisection cap per outer sub-interval
};

struct QotSettings {
    double launch_power_dbm = 0.0;
    double reference_bandwidth_ghz = 12.5;
    BandWindow c_band{191.3, 196.1};
    bool l_enabled = false;
    BandWindow l_band{186.05, 190.85};
    double placement_center_thz = 193.7;
    double route_osnr_frequency_thz = 193.4;
    QuadratureOptions quadrature;
};

struct NoiseBudget {
    double p_signal_mw = 0.0;
    double p_ase_mw = 0.0;  // in the reference bandwidth
    double p_nli_mw = 0.0;  // in the reference bandwidth

    double gsnr_db() const { return units::lin_to_db(p_signal_mw / (p_ase_mw + p_nli_mw)); }
};

/// ASE-only OSNR over `spans` with every amplifier compensating its span loss.
double ase_osnr(std::span<const Span> spans, double launch_power_dbm, double reference_bandwidth_ghz = 12.5,
                double frequency_thz = 193.4);

/// ASE power in mW in the reference bandwidth at `frequency_thz`.
double ase_power_mw(std::span<const Span> spans, double reference_bandwidth_ghz, double frequency_thz);

/// Incoherent GN nonlinear-interference PSD (W/Hz) at the center of channel
/// `channel` after one span.
double gn_nli_psd_span(const ChannelPlacement& placement, std::size_t channel, const FiberSpan& fiber,
                       const QuadratureOptions& options = {});

/// Same, summed incoherently over every span plus the optional correction.
double gn_nli_psd(const ChannelPlacement& placement, std::size_t channel, std::span<const Span> spans,
                  const QuadratureOptions& options = {}, const NliCorrection& correction = {});

/// NLI power in mW integrated over the channel's symbol-rate bandwidth.
double gn_nli_power(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel,
                    const QuadratureOptions& options = {}, const NliCorrection& correction = {});

NoiseBudget noise_budget(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel,
                         double reference_bandwidth_ghz = 12.5, const QuadratureOptions& options = {},
                         const NliCorrection& correction = {});

/// GSNR in dB with ASE and NLI both referenced to `reference_bandwidth_ghz`.
double gsnr(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel,
            double reference_bandwidth_ghz = 12.5, const QuadratureOptions& options = {},
            const NliCorrection& correction = {});

/// `count` identical channels on a regular grid centered on `center_thz`.
/// Spacing is the configuration bandwidth rounded up to the 12.5 GHz grid.
/// Throws PlacementOverflow when the comb does not fit the band.
ChannelPlacement homogeneous_placement(const TrxConfig& config, std::size_t count, const QotSettings& settings);

struct GsnrBound {
    double lower_db = 0.0;
    double upper_db = 0.0;
    std::string group_key;
    std::size_t period = 0;
    std::string min_rate_config;
    std::string max_rate_config;
    std::size_t min_rate_channels = 0;
    std::size_t max_rate_channels = 0;
    int evaluations = 0;
};

/// Memoizing GSNR evaluator. Counts one evaluation per gsnr() call whether or
/// not the per-span integrals came from the cache. Thread-safe.
class GnEngine {
public:
    explicit GnEngine(QotSettings settings = {}, NliCorrection correction = {});

    const QotSettings& settings() const { return settings_; }
    double gsnr(const ChannelPlacement& placement, std::span<const Span> spans, std::size_t channel);
    long evaluations() const { return evaluations_.load(); }
    void reset_counter() { evaluations_ = 0; }

private:
    double span_psd(const ChannelPlacement& placement, std::size_t channel, const FiberSpan& fiber);

    QotSettings settings_;
    NliCorrection correction_;
    std::atomic<long> evaluations_{0};
    std::mutex mutex_;
    std::map<std::vector<double>, double> cache_;
};

/// Worst/best-case GSNR of a grouped demand in one period, from two
/// homogeneous placements (minimum- and maximum-rate admissible configs)
/// sized to carry the group rate, evaluated on the central channel.
GsnrBound gsnr_bounds(const GroupedDemand& group, std::span<const TrxConfig> admissible_by_osnr, std::size_t period,
                      std::span<const Span> spans, GnEngine& engine);

}  // namespace flexplan
