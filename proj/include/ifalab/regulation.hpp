#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifalab/market.hpp"

namespace ifalab {

enum class RegimeKind { unregulated, prick_bubbles, prop_crashes, both };

std::string_view to_string(RegimeKind kind) noexcept;

/// Moving-average band: a bubble is a price more than `threshold` ticks above
/// the mean of the last `ma_window` prices (current price included), a crash
/// the mirror image.
struct DetectorParams {
    std::size_t ma_window = 100;
    std::int64_t threshold = 10;

    void validate() const;
};

struct Regime {
    RegimeKind kind = RegimeKind::unregulated;
    DetectorParams detector;
    std::optional<std::uint64_t> budget;  // interventions allowed; empty = unlimited

    bool exhausted(std::uint64_t interventions_so_far) const noexcept {
        return budget && interventions_so_far >= *budget;
    }
};

/// `unregulated | prick[:ma,k[,budget]] | prop[:ma,k[,budget]] | both[:ma,k[,budget]]`
Regime parse_regime(std::string_view text);
std::string format_regime(const Regime& regime);

bool detect_bubble(std::span<const std::int64_t> prices, const DetectorParams& params);
bool detect_crash(std::span<const std::int64_t> prices, const DetectorParams& params);

struct Override {
    Action action;
    bool intervened;
};

Override apply_regime(Action decision, std::span<const std::int64_t> prices, const Regime& regime,
                      std::uint64_t interventions_so_far);

struct Intervention {
    std::uint64_t t;  // zero-based tick index
    Action original;
    Action overridden;
};

struct RegulatedRun {
    MarketPath path;
    std::vector<Intervention> interventions;
    std::optional<std::uint64_t> budget_exhausted_at;  // tick index of the last allowed intervention

    std::size_t count(Action overridden) const;
};

RegulatedRun simulate_regulated(const TraderConfig& config, const Regime& regime, std::uint64_t horizon);

/// One row of the detector sweep behind the prick-vs-both comparison.
struct AsymmetryProbe {
    DetectorParams detector;
    bool identical_ticks;
    std::size_t prick_interventions;       // under PRICK_BUBBLES
    std::size_t prop_interventions_both;   // PROP overrides logged under BOTH
};

AsymmetryProbe probe_asymmetry(const TraderConfig& config, const DetectorParams& detector, std::uint64_t horizon);

std::vector<AsymmetryProbe> sweep_asymmetry(const TraderConfig& config, std::span<const std::size_t> ma_windows,
                                            std::span<const std::int64_t> thresholds, std::uint64_t horizon);

}  // namespace ifalab
