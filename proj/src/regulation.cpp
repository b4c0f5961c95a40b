#include "ifalab/regulation.hpp"

#include <charconv>
#include <numeric>

#include "ifalab/error.hpp"
#include "ifalab/parallel.hpp"

namespace ifalab {

std::string_view to_string(RegimeKind kind) noexcept {
    switch (kind) {
        case RegimeKind::unregulated: return "unregulated";
        case RegimeKind::prick_bubbles: return "prick";
        case RegimeKind::prop_crashes: return "prop";
        case RegimeKind::both: return "both";
    }
    return "unknown";
}

void DetectorParams::validate() const {
    require(ma_window >= 2, "moving-average window must be at least 2");
    require(threshold >= 1, "detector threshold must be at least 1");
}

namespace {

template <typename T>
T parse_number(std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw Error(ErrorCode::parse, "invalid number in regime spec: '" + std::string(text) + "'");
    }
    return value;
}

// Band tests in integers: price > mean + k  <=>  price*w > sum + k*w.
enum class Band { inside, above, below };

Band classify(std::int64_t price, std::int64_t window_sum, const DetectorParams& p) {
    const auto w = static_cast<std::int64_t>(p.ma_window);
    const std::int64_t scaled = price * w;
    if (scaled > window_sum + p.threshold * w) return Band::above;
    if (scaled < window_sum - p.threshold * w) return Band::below;
    return Band::inside;
}

Band classify(std::span<const std::int64_t> prices, const DetectorParams& p) {
    if (prices.size() < p.ma_window) return Band::inside;
    const auto recent = prices.last(p.ma_window);
    const std::int64_t total = std::accumulate(recent.begin(), recent.end(), std::int64_t{0});
    return classify(prices.back(), total, p);
}

Override decide(Action decision, Band band, const Regime& regime, std::uint64_t interventions_so_far) {
    if (regime.kind == RegimeKind::unregulated || regime.exhausted(interventions_so_far)) {
        return {decision, false};
    }
    const bool pricks = regime.kind == RegimeKind::prick_bubbles || regime.kind == RegimeKind::both;
    const bool props = regime.kind == RegimeKind::prop_crashes || regime.kind == RegimeKind::both;
    if (pricks && decision == Action::buy && band == Band::above) return {Action::sell, true};
    if (props && decision == Action::sell && band == Band::below) return {Action::buy, true};
    return {decision, false};
}

}  // namespace

Regime parse_regime(std::string_view text) {
    Regime regime;
    const auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    if (head == "unregulated") regime.kind = RegimeKind::unregulated;
    else if (head == "prick") regime.kind = RegimeKind::prick_bubbles;
    else if (head == "prop") regime.kind = RegimeKind::prop_crashes;
    else if (head == "both") regime.kind = RegimeKind::both;
    else throw Error(ErrorCode::parse, "unknown regime '" + std::string(head) + "'");

    if (colon == std::string_view::npos) return regime;
    if (regime.kind == RegimeKind::unregulated) {
        throw Error(ErrorCode::parse, "unregulated takes no detector parameters");
    }
    std::vector<std::string_view> fields;
    std::string_view rest = text.substr(colon + 1);
    while (true) {
        const auto comma = rest.find(',');
        fields.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (fields.size() < 2 || fields.size() > 3) {
        throw Error(ErrorCode::parse, "regime parameters must be ma,k or ma,k,budget");
    }
    regime.detector.ma_window = parse_number<std::size_t>(fields[0]);
    regime.detector.threshold = parse_number<std::int64_t>(fields[1]);
    if (fields.size() == 3) regime.budget = parse_number<std::uint64_t>(fields[2]);
    regime.detector.validate();
    return regime;
}

std::string format_regime(const Regime& regime) {
    std::string out(to_string(regime.kind));
    if (regime.kind == RegimeKind::unregulated) return out;
    out += ':' + std::to_string(regime.detector.ma_window) + ',' + std::to_string(regime.detector.threshold);
    if (regime.budget) out += ',' + std::to_string(*regime.budget);
    return out;
}

bool detect_bubble(std::span<const std::int64_t> prices, const DetectorParams& params) {
    return classify(prices, params) == Band::above;
}

bool detect_crash(std::span<const std::int64_t> prices, const DetectorParams& params) {
    return classify(prices, params) == Band::below;
}

Override apply_regime(Action decision, std::span<const std::int64_t> prices, const Regime& regime,
                      std::uint64_t interventions_so_far) {
    return decide(decision, classify(prices, regime.detector), regime, interventions_so_far);
}

std::size_t RegulatedRun::count(Action overridden) const {
    std::size_t n = 0;
    for (const auto& i : interventions) n += i.overridden == overridden ? 1 : 0;
    return n;
}

RegulatedRun simulate_regulated(const TraderConfig& config, const Regime& regime, std::uint64_t horizon) {
    config.validate();
    require(horizon >= 1, "horizon must be at least one tick");
    if (regime.kind != RegimeKind::unregulated) regime.detector.validate();

    RegulatedRun run;
    auto& path = run.path;
    path.ticks.resize(horizon);
    path.prices.resize(horizon);
    if (regime.exhausted(0)) run.budget_exhausted_at = 0;

    const std::size_t w = regime.detector.ma_window;
    std::uint64_t window = pack_window(config.seed);
    std::int64_t price = 0;
    std::int64_t window_sum = 0;  // sum of the last min(t, w) prices
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const Action decision = run_ifa_packed(config.rule, window, config.lookback);
        const Band band = t >= w ? classify(price, window_sum, regime.detector) : Band::inside;
        const Override result = decide(decision, band, regime, run.interventions.size());
        if (result.intervened) {
            run.interventions.push_back({t, decision, result.action});
            if (regime.exhausted(run.interventions.size())) run.budget_exhausted_at = t;
        }

        const int tick = tick_of(result.action);
        price += tick;
        path.ticks[t] = static_cast<std::int8_t>(tick);
        path.prices[t] = price;
        window_sum += price;
        if (t >= w) window_sum -= path.prices[t - w];
        window = advance_window(window, result.action, config.lookback);
    }
    return run;
}

AsymmetryProbe probe_asymmetry(const TraderConfig& config, const DetectorParams& detector, std::uint64_t horizon) {
    const auto prick = simulate_regulated(config, {RegimeKind::prick_bubbles, detector, std::nullopt}, horizon);
    const auto both = simulate_regulated(config, {RegimeKind::both, detector, std::nullopt}, horizon);
    return {detector, prick.path.ticks == both.path.ticks, prick.interventions.size(), both.count(Action::buy)};
}

std::vector<AsymmetryProbe> sweep_asymmetry(const TraderConfig& config, std::span<const std::size_t> ma_windows,
                                            std::span<const std::int64_t> thresholds, std::uint64_t horizon) {
    std::vector<DetectorParams> grid;
    for (auto ma : ma_windows) {
        for (auto k : thresholds) grid.push_back({ma, k});
    }
    std::vector<AsymmetryProbe> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { out[i] = probe_asymmetry(config, grid[i], horizon); });
    return out;
}

}  // namespace ifalab
