#include "ifalab/market.hpp"

#include <algorithm>

#include "ifalab/error.hpp"

namespace ifalab {

TraderConfig TraderConfig::with_default_seed(IfaRule rule, unsigned lookback) {
    return {std::move(rule), lookback, std::vector<Sign>(lookback, Sign::up)};
}

void TraderConfig::validate() const {
    require(lookback >= 1, "lookback must be at least 1");
    require(lookback <= max_lookback, "lookback exceeds " + std::to_string(max_lookback));
    require(seed.size() == lookback, "seed window length must equal the lookback");
}

std::uint64_t pack_window(std::span<const Sign> window) {
    require(window.size() <= max_lookback, "window too long to pack");
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        packed |= std::uint64_t{window[i] == Sign::down} << i;
    }
    return packed;
}

std::vector<Sign> unpack_window(std::uint64_t packed, unsigned length) {
    std::vector<Sign> out(length);
    for (unsigned i = 0; i < length; ++i) out[i] = ((packed >> i) & 1U) ? Sign::down : Sign::up;
    return out;
}

std::vector<Sign> parse_seed_window(std::string_view text, unsigned lookback) {
    if (text == "allU") return std::vector<Sign>(lookback, Sign::up);
    if (text == "allD") return std::vector<Sign>(lookback, Sign::down);
    std::vector<Sign> out;
    for (char c : text) {
        if (c == 'U' || c == 'u') out.push_back(Sign::up);
        else if (c == 'D' || c == 'd') out.push_back(Sign::down);
        else throw Error(ErrorCode::parse, "seed window may only contain U and D");
    }
    if (out.size() != lookback) {
        throw Error(ErrorCode::precondition, "seed window has " + std::to_string(out.size()) +
                                                 " signs but lookback is " + std::to_string(lookback));
    }
    return out;
}

std::string format_window(std::span<const Sign> window) {
    std::string out;
    for (Sign s : window) out += to_char(s);
    return out;
}

StepResult step(const TraderConfig& config, std::span<const Sign> window) {
    require(window.size() == config.lookback, "window length must equal the lookback");
    const Action decision = run_ifa(config.rule, window);
    std::vector<Sign> next;
    next.reserve(window.size());
    next.push_back(sign_of(decision));
    next.insert(next.end(), window.begin(), window.end() - 1);
    return {tick_of(decision), std::move(next)};
}

MarketPath simulate(const TraderConfig& config, std::uint64_t horizon) {
    config.validate();
    require(horizon >= 1, "horizon must be at least one tick");
    MarketPath path;
    path.ticks.resize(horizon);
    path.prices.resize(horizon);
    std::uint64_t window = pack_window(config.seed);
    std::int64_t price = 0;
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const Action decision = run_ifa_packed(config.rule, window, config.lookback);
        const int tick = tick_of(decision);
        price += tick;
        path.ticks[t] = static_cast<std::int8_t>(tick);
        path.prices[t] = price;
        window = advance_window(window, decision, config.lookback);
    }
    return path;
}

CycleInfo cycle_length(const TraderConfig& config) {
    config.validate();
    const auto& rule = config.rule;
    const unsigned n = config.lookback;
    const auto next = [&](std::uint64_t w) { return advance_window(w, run_ifa_packed(rule, w, n), n); };
    const std::uint64_t x0 = pack_window(config.seed);

    // Brent: find the period with power-of-two search windows.
    std::uint64_t power = 1;
    std::uint64_t period = 1;
    std::uint64_t tortoise = x0;
    std::uint64_t hare = next(x0);
    while (tortoise != hare) {
        if (power == period) {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare = next(hare);
        ++period;
    }

    // Transient: advance one pointer by a full period, then walk both.
    tortoise = x0;
    hare = x0;
    for (std::uint64_t i = 0; i < period; ++i) hare = next(hare);
    std::uint64_t transient = 0;
    while (tortoise != hare) {
        tortoise = next(tortoise);
        hare = next(hare);
        ++transient;
    }
    return {transient, period};
}

std::vector<CycleSummary> enumerate_cycles(const IfaRule& rule, unsigned lookback) {
    require(lookback >= 1 && lookback <= 20, "exhaustive cycle enumeration supports 1 <= n <= 20");
    const std::uint64_t states = std::uint64_t{1} << lookback;
    std::vector<std::uint64_t> successor(states);
    for (std::uint64_t w = 0; w < states; ++w) {
        successor[w] = advance_window(w, run_ifa_packed(rule, w, lookback), lookback);
    }

    // Colour every window with the id of the cycle it drains into.
    constexpr std::uint32_t unvisited = 0xFFFFFFFFU;
    constexpr std::uint32_t on_stack = 0xFFFFFFFEU;
    std::vector<std::uint32_t> owner(states, unvisited);
    std::vector<CycleSummary> cycles;
    std::vector<std::uint64_t> trail;
    for (std::uint64_t start = 0; start < states; ++start) {
        if (owner[start] != unvisited) continue;
        trail.clear();
        std::uint64_t w = start;
        while (owner[w] == unvisited) {
            owner[w] = on_stack;
            trail.push_back(w);
            w = successor[w];
        }
        std::uint32_t id;
        if (owner[w] == on_stack) {
            id = static_cast<std::uint32_t>(cycles.size());
            CycleSummary cycle{0, w, 0};
            std::uint64_t c = w;
            do {
                ++cycle.period;
                cycle.entry = std::min(cycle.entry, c);
                c = successor[c];
            } while (c != w);
            cycles.push_back(cycle);
        } else {
            id = owner[w];
        }
        for (auto v : trail) owner[v] = id;
        cycles[id].basin_size += trail.size();
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const CycleSummary& a, const CycleSummary& b) { return a.entry < b.entry; });
    return cycles;
}

Action rule54_oracle(std::span<const Sign> window) {
    require(window.size() >= 2, "the closed form needs at least two signs");
    const auto n = window.size();
    return window[n - 1] != window[n - 2] ? Action::buy : Action::sell;
}

}  // namespace ifalab
