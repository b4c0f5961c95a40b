#include "ifalab/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "ifalab/error.hpp"
#include "ifalab/kernels.hpp"

namespace ifalab {

ReturnSeries bucket_returns(const MarketPath& path, std::size_t bucket_size, bool overlapping) {
    require(bucket_size >= 1, "bucket size must be at least 1");
    const auto& ticks = path.ticks;
    require(ticks.size() >= bucket_size, "path shorter than one bucket");

    ReturnSeries out;
    const auto scale = static_cast<double>(bucket_size);
    if (overlapping) {
        out.returns.reserve(ticks.size() - bucket_size + 1);
        std::int64_t running = 0;
        for (std::size_t t = 0; t < ticks.size(); ++t) {
            running += ticks[t];
            if (t >= bucket_size) running -= ticks[t - bucket_size];
            if (t + 1 >= bucket_size) out.returns.push_back(static_cast<double>(running) / scale);
        }
        return out;
    }
    const std::size_t buckets = ticks.size() / bucket_size;
    out.returns.reserve(buckets);
    for (std::size_t j = 0; j < buckets; ++j) {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < bucket_size; ++i) total += ticks[j * bucket_size + i];
        out.returns.push_back(static_cast<double>(total) / scale);
    }
    return out;
}

namespace {

void require_finite(std::span<const double> x) {
    for (double v : x) require(std::isfinite(v), "return series must hold finite values");
}

MomentEstimates moments_of(std::span<const double> x, std::span<const std::size_t> lags, bool strict) {
    const auto n = static_cast<double>(x.size());
    MomentEstimates out;
    out.mean = kernels::sum(x) / n;
    const auto sums = kernels::central_power_sums(x, out.mean);
    const double m2 = sums.s2 / n;
    out.std_dev = std::sqrt(m2);
    out.autocorr[0] = 1.0;
    if (m2 == 0) {
        if (strict) {
            throw Error(ErrorCode::degenerate_series, "zero variance: skewness and kurtosis are undefined");
        }
        out.skewness = out.excess_kurtosis = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.skewness = (sums.s3 / n) / std::pow(m2, 1.5);
    out.excess_kurtosis = (sums.s4 / n) / (m2 * m2) - 3.0;
    for (auto lag : lags) {
        require(lag < x.size(), "autocorrelation lag must be shorter than the series");
        if (lag == 0) continue;
        out.autocorr[lag] = kernels::lagged_cross(x, out.mean, lag) / sums.s2;
    }
    return out;
}

}  // namespace

MomentEstimates moments(const ReturnSeries& series, std::span<const std::size_t> lags) {
    require(series.returns.size() >= 4, "moments need at least 4 returns");
    require_finite(series.returns);
    return moments_of(series.returns, lags, true);
}

double autocorrelation(const ReturnSeries& series, std::size_t lag) {
    const auto& x = series.returns;
    if (lag >= x.size()) {
        throw Error(ErrorCode::range, "lag " + std::to_string(lag) + " must be < series length " +
                                          std::to_string(x.size()));
    }
    if (lag == 0) return 1.0;
    require_finite(x);
    const double mean = kernels::sum(x) / static_cast<double>(x.size());
    const double denom = kernels::central_power_sums(x, mean).s2;
    if (denom == 0) throw Error(ErrorCode::degenerate_series, "zero variance: autocorrelation undefined");
    return kernels::lagged_cross(x, mean, lag) / denom;
}

std::vector<MomentEstimates> rolling_moments(const ReturnSeries& series, std::size_t window, std::size_t stride) {
    const auto& x = series.returns;
    require(window <= x.size(), "rolling window longer than the series");
    require(window >= 4, "rolling window must hold at least 4 returns");
    require(stride >= 1, "stride must be at least 1");
    require_finite(x);
    std::vector<MomentEstimates> out;
    out.reserve((x.size() - window) / stride + 1);
    const std::span<const double> all(x);
    for (std::size_t start = 0; start + window <= x.size(); start += stride) {
        out.push_back(moments_of(all.subspan(start, window), {}, false));
    }
    return out;
}

ReturnSeries normal_benchmark(double mean, double std_dev, std::size_t count, std::uint64_t seed) {
    require(std_dev >= 0, "standard deviation must be non-negative");
    require(count >= 1, "benchmark needs at least one draw");
    ReturnSeries out;
    out.source = "normal-benchmark";
    out.returns.resize(count);
    if (std_dev == 0) {
        std::fill(out.returns.begin(), out.returns.end(), mean);
        return out;
    }
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> draw(mean, std_dev);
    for (auto& v : out.returns) v = draw(engine);
    return out;
}

std::size_t lz78_phrase_count(std::span<const std::uint8_t> bits) {
    // Binary trie of phrases seen so far; node 0 is the empty phrase.
    std::vector<std::array<std::uint32_t, 2>> trie(1, {0, 0});
    trie.reserve(bits.size() / 4 + 2);
    std::size_t phrases = 0;
    std::uint32_t node = 0;
    for (auto b : bits) {
        const unsigned symbol = b ? 1U : 0U;
        const std::uint32_t child = trie[node][symbol];
        if (child != 0) {
            node = child;
            continue;
        }
        trie[node][symbol] = static_cast<std::uint32_t>(trie.size());
        trie.push_back({0, 0});
        ++phrases;
        node = 0;
    }
    return phrases + (node != 0 ? 1 : 0);
}

std::size_t max_phrase_count(std::size_t length) {
    // Use every phrase of length 1, then 2, ... until the symbols run out.
    std::size_t count = 0;
    std::size_t remaining = length;
    for (std::size_t len = 1;; ++len) {
        const std::size_t available = std::size_t{1} << std::min<std::size_t>(len, 62);
        if (remaining < len * available) return count + remaining / len;
        remaining -= len * available;
        count += available;
    }
}

double complexity_score(std::span<const std::uint8_t> bits) {
    require(bits.size() >= 64, "complexity score needs at least 64 symbols");
    const auto code_length = [](double c) { return c * (std::log2(c) + 1.0); };
    const double c = static_cast<double>(lz78_phrase_count(bits));
    const double reference = static_cast<double>(max_phrase_count(bits.size()));
    return std::clamp(code_length(c) / code_length(reference), 0.0, 1.0);
}

}  // namespace ifalab
