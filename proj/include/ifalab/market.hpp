#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifalab/ifa.hpp"

namespace ifalab {

/// Longest lookback the packed window representation holds.
inline constexpr unsigned max_lookback = 63;

struct TraderConfig {
    IfaRule rule;
    unsigned lookback = 0;
    std::vector<Sign> seed;  // most recent first, length == lookback

    /// All-UP seed, the documented default.
    static TraderConfig with_default_seed(IfaRule rule, unsigned lookback);

    void validate() const;
};

struct MarketPath {
    std::vector<std::int8_t> ticks;
    std::vector<std::int64_t> prices;  // prices[t] = ticks[0] + ... + ticks[t]
};

struct StepResult {
    int tick;
    std::vector<Sign> next_window;
};

struct CycleInfo {
    std::uint64_t transient = 0;
    std::uint64_t period = 0;

    friend bool operator==(const CycleInfo&, const CycleInfo&) = default;
};

/// One cycle of the window map found by exhaustive search.
struct CycleSummary {
    std::uint64_t period;
    std::uint64_t entry;        // least packed window on the cycle
    std::uint64_t basin_size;   // windows (including the cycle) that flow into it
};

// Packed windows: bit i is the sign i ticks ago, 1 = DOWN.
std::uint64_t pack_window(std::span<const Sign> window);
std::vector<Sign> unpack_window(std::uint64_t packed, unsigned length);

/// U/D string most-recent-first, or "allU" / "allD".
std::vector<Sign> parse_seed_window(std::string_view text, unsigned lookback);
std::string format_window(std::span<const Sign> window);

/// Window-map successor on packed windows.
inline std::uint64_t advance_window(std::uint64_t window, Action decision, unsigned lookback) noexcept {
    const std::uint64_t mask = (std::uint64_t{1} << lookback) - 1;
    return ((window << 1) | (decision == Action::sell ? 1U : 0U)) & mask;
}

StepResult step(const TraderConfig& config, std::span<const Sign> window);
MarketPath simulate(const TraderConfig& config, std::uint64_t horizon);

/// Transient and period of the orbit from the configured seed. Brent's method,
/// constant memory.
CycleInfo cycle_length(const TraderConfig& config);

/// Every cycle of the window map over all 2^n windows (n <= 20).
std::vector<CycleSummary> enumerate_cycles(const IfaRule& rule, unsigned lookback);

/// Rule 54 in closed form: BUY iff the two oldest signs differ.
Action rule54_oracle(std::span<const Sign> window);

}  // namespace ifalab
