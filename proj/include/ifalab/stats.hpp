#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ifalab/market.hpp"

namespace ifalab {

struct ReturnSeries {
    std::vector<double> returns;
    std::string source = "generated";  // generated | ingested | normal-benchmark
};

/// Population moments: skewness m3/m2^1.5, excess kurtosis m4/m2^2 - 3.
struct MomentEstimates {
    double mean = 0;
    double std_dev = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
    std::map<std::size_t, double> autocorr;  // always holds lag 0 -> 1
};

inline constexpr std::size_t default_bucket_size = 22;

/// Mean tick per bucket. Non-overlapping buckets drop the trailing partial
/// bucket; `overlapping` gives the rolling-window variant (one value per
/// starting tick).
ReturnSeries bucket_returns(const MarketPath& path, std::size_t bucket_size, bool overlapping = false);

MomentEstimates moments(const ReturnSeries& series, std::span<const std::size_t> lags = {});
double autocorrelation(const ReturnSeries& series, std::size_t lag);

/// Moments over every window of `window` consecutive returns, advancing by
/// `stride`. Constant windows report NaN skewness and kurtosis instead of throwing.
std::vector<MomentEstimates> rolling_moments(const ReturnSeries& series, std::size_t window,
                                             std::size_t stride = 1);

/// `count` draws from N(mean, std^2): std::mt19937_64 seeded with `seed`
/// feeding std::normal_distribution.
ReturnSeries normal_benchmark(double mean, double std_dev, std::size_t count, std::uint64_t seed);

/// LZ78 compressibility in [0,1]: code length c*(log2 c + 1) of the
/// incremental parse, over the same quantity for the largest phrase count any
/// sequence of this length can reach. Needs at least 64 symbols.
double complexity_score(std::span<const std::uint8_t> bits);

/// Number of phrases in the LZ78 incremental parse (trailing partial phrase counted).
std::size_t lz78_phrase_count(std::span<const std::uint8_t> bits);

/// Most distinct phrases a binary sequence of `length` symbols can parse into.
std::size_t max_phrase_count(std::size_t length);

}  // namespace ifalab
