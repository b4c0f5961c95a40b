#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <random>
#include <string>

#include "ifalab/error.hpp"
#include "ifalab/stats.hpp"

using namespace ifalab;

namespace {

ReturnSeries series_of(std::vector<double> x) { return {std::move(x), "generated"}; }

ReturnSeries alternating(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
    return series_of(x);
}

MarketPath path_of(const std::vector<int>& ticks) {
    MarketPath p;
    std::int64_t price = 0;
    for (int t : ticks) {
        price += t;
        p.ticks.push_back(static_cast<std::int8_t>(t));
        p.prices.push_back(price);
    }
    return p;
}

// Four separate passes in long double.
struct NaiveMoments {
    long double mean, m2, m3, m4;
};

NaiveMoments naive(const std::vector<double>& x) {
    const auto n = static_cast<long double>(x.size());
    long double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    long double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) m2 += (v - mean) * (v - mean);
    for (double v : x) m3 += (v - mean) * (v - mean) * (v - mean);
    for (double v : x) m4 += (v - mean) * (v - mean) * (v - mean) * (v - mean);
    return {mean, m2 / n, m3 / n, m4 / n};
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300}); }

// Reference LZ78 parse over strings.
std::size_t naive_lz78(const std::vector<std::uint8_t>& bits) {
    std::set<std::string> dict;
    std::string cur;
    std::size_t count = 0;
    for (auto b : bits) {
        cur += b ? '1' : '0';
        if (!dict.count(cur)) {
            dict.insert(cur);
            ++count;
            cur.clear();
        }
    }
    return count + (cur.empty() ? 0 : 1);
}

std::vector<std::uint8_t> coin_flips(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(gen() & 1U);
    return bits;
}

}  // namespace

TEST_CASE("bucket returns") {
    const auto r = bucket_returns(path_of({1, 1, -1, -1, 1, 1}), 2);
    CHECK(r.returns == std::vector<double>{1.0, -1.0, 1.0});

    std::vector<int> ticks(23, 1);
    CHECK(bucket_returns(path_of(ticks), 22).returns.size() == 1);
    CHECK_THROWS_AS(bucket_returns(path_of({1, -1}), 3), Error);

    // The n=3 rule-54 cycle sums to +1 over its 7 ticks.
    std::vector<int> cycle;
    for (int rep = 0; rep < 20; ++rep) {
        for (int t : {-1, -1, 1, -1, 1, 1, 1}) cycle.push_back(t);
    }
    for (double v : bucket_returns(path_of(cycle), 7).returns) CHECK(v == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("overlapping buckets are the rolling mean") {
    const auto r = bucket_returns(path_of({1, 1, -1, -1, 1}), 2, true);
    CHECK(r.returns == std::vector<double>{1.0, 0.0, -1.0, 0.0});
}

TEST_CASE("bucket returns preserve the included total") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> ticks(100 + gen() % 400);
        for (auto& t : ticks) t = (gen() & 1U) ? 1 : -1;
        const std::size_t b = 1 + gen() % 30;
        const auto r = bucket_returns(path_of(ticks), b);
        double total = 0;
        for (double v : r.returns) total += v;
        std::int64_t included = 0;
        for (std::size_t i = 0; i < r.returns.size() * b; ++i) included += ticks[i];
        CHECK(total * static_cast<double>(b) == doctest::Approx(static_cast<double>(included)));
    }
}

TEST_CASE("moments of the alternating series") {
    const std::vector<std::size_t> lags{1};
    const auto m = moments(alternating(1000), lags);
    CHECK(m.mean == doctest::Approx(0.0));
    CHECK(m.std_dev == doctest::Approx(1.0));
    CHECK(m.skewness == doctest::Approx(0.0));
    CHECK(m.excess_kurtosis == doctest::Approx(-2.0));
    CHECK(m.autocorr.at(0) == 1.0);
    CHECK(std::abs(m.autocorr.at(1) + 1.0) <= 2.0 / 1000);
}

TEST_CASE("moment error paths") {
    try {
        moments(series_of(std::vector<double>(10, 3.0)));
        FAIL("expected degenerate series error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_series);
    }
    CHECK_THROWS_AS(moments(series_of({1, 2, 3})), Error);
    CHECK_THROWS_AS(moments(series_of({1, 2, NAN, 4})), Error);
}

TEST_CASE("moments agree with a four-pass reference") {
    std::mt19937_64 gen(5);
    std::lognormal_distribution<double> draw(0.0, 0.7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(50 + gen() % 5000);
        for (auto& v : x) v = draw(gen) - 1.5;
        const auto m = moments(series_of(x));
        const auto ref = naive(x);
        const auto m2 = static_cast<double>(ref.m2);
        CHECK(close_rel(m.mean, static_cast<double>(ref.mean), 1e-12));
        CHECK(close_rel(m.std_dev, std::sqrt(m2), 1e-12));
        CHECK(close_rel(m.skewness, static_cast<double>(ref.m3 / std::pow(ref.m2, 1.5L)), 1e-12));
        CHECK(close_rel(m.excess_kurtosis + 3, static_cast<double>(ref.m4 / (ref.m2 * ref.m2)), 1e-12));
    }
}

TEST_CASE("shift invariance and scale equivariance") {
    std::mt19937_64 gen(9);
    std::student_t_distribution<double> draw(5.0);
    std::vector<double> x(4000);
    for (auto& v : x) v = draw(gen);
    const std::vector<std::size_t> lags{1, 2, 5, 22};
    const auto base = moments(series_of(x), lags);

    auto shifted = x;
    for (auto& v : shifted) v += 7.25;
    const auto ms = moments(series_of(shifted), lags);
    CHECK(ms.mean == doctest::Approx(base.mean + 7.25));
    CHECK(close_rel(ms.std_dev, base.std_dev, 1e-9));
    CHECK(close_rel(ms.skewness, base.skewness, 1e-7));

    for (double c : {0.01, 3.0, 250.0}) {
        auto scaled = x;
        for (auto& v : scaled) v *= c;
        const auto mc = moments(series_of(scaled), lags);
        CHECK(close_rel(mc.std_dev, c * base.std_dev, 1e-12));
        CHECK(close_rel(mc.skewness, base.skewness, 1e-12));
        CHECK(close_rel(mc.excess_kurtosis, base.excess_kurtosis, 1e-12));
        for (auto l : lags) CHECK(close_rel(mc.autocorr.at(l), base.autocorr.at(l), 1e-12));
    }
}

TEST_CASE("autocorrelation") {
    CHECK(std::abs(autocorrelation(alternating(500), 1) + 1.0) <= 2.0 / 500);
    CHECK(autocorrelation(series_of({1, 4, 2, 8}), 0) == 1.0);
    CHECK_THROWS_AS(autocorrelation(series_of({1, 2, 3}), 3), Error);
    CHECK_THROWS_AS(autocorrelation(series_of({2, 2, 2, 2}), 1), Error);

    const auto bench = normal_benchmark(0, 1, 100000, 42);
    CHECK(std::abs(autocorrelation(bench, 1)) < 0.01);

    // Cauchy-Schwarz keeps every value in [-1, 1].
    std::mt19937_64 gen(4);
    std::vector<double> x(300);
    for (auto& v : x) v = static_cast<double>(gen() % 1000);
    for (std::size_t l = 1; l < 299; ++l) {
        const double r = autocorrelation(series_of(x), l);
        REQUIRE(r >= -1.0);
        REQUIRE(r <= 1.0);
    }
}

TEST_CASE("rolling moments") {
    for (const auto& m : rolling_moments(alternating(200), 20)) {
        CHECK(m.excess_kurtosis == doctest::Approx(-2.0));
    }
    const auto s = alternating(64);
    const auto whole = rolling_moments(s, 64);
    REQUIRE(whole.size() == 1);
    const auto direct = moments(s);
    CHECK(whole[0].mean == direct.mean);
    CHECK(whole[0].excess_kurtosis == direct.excess_kurtosis);
    CHECK_THROWS_AS(rolling_moments(s, 65), Error);

    auto calm = normal_benchmark(0, 1, 2000, 1).returns;
    const auto wild = normal_benchmark(0, 3, 2000, 2).returns;
    calm.insert(calm.end(), wild.begin(), wild.end());
    const auto rolling = rolling_moments(series_of(calm), 200, 200);
    REQUIRE(rolling.size() == 20);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 10; j < 20; ++j) CHECK(rolling[j].std_dev > rolling[i].std_dev);
    }
}

TEST_CASE("normal benchmark") {
    const auto flat = normal_benchmark(0.25, 0, 10, 3);
    for (double v : flat.returns) CHECK(v == 0.25);
    CHECK(normal_benchmark(0, 1, 1000, 8).returns == normal_benchmark(0, 1, 1000, 8).returns);
    CHECK_THROWS_AS(normal_benchmark(0, -1, 10, 1), Error);

    const auto big = normal_benchmark(0, 1, 1000000, 2024);
    const auto m = moments(big);
    CHECK(std::abs(m.mean) <= 0.005);
    CHECK(std::abs(m.std_dev - 1.0) <= 0.005);
    CHECK(std::abs(m.skewness) < 0.02);
    CHECK(std::abs(m.excess_kurtosis) < 0.05);
}

TEST_CASE("LZ78 phrase counting matches a string-set reference") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto bits = coin_flips(64 + seed * 97, seed);
        CHECK(lz78_phrase_count(bits) == naive_lz78(bits));
    }
    const std::vector<std::uint8_t> zeros(4096, 0);
    CHECK(lz78_phrase_count(zeros) == naive_lz78(zeros));
    CHECK(max_phrase_count(2) == 2);
    CHECK(max_phrase_count(10) == 6);     // 0 1 00 01 10 11
    CHECK(max_phrase_count(4096) == 566);
}

TEST_CASE("complexity score") {
    const std::vector<std::uint8_t> zeros(4096, 0);
    CHECK(complexity_score(zeros) < 0.15);

    std::vector<std::uint8_t> period2(4096);
    for (std::size_t i = 0; i < period2.size(); ++i) period2[i] = static_cast<std::uint8_t>(i % 2);
    CHECK(complexity_score(period2) < 0.2);

    CHECK(complexity_score(coin_flips(4096, 77)) > 0.8);
    CHECK_THROWS_AS(complexity_score(std::vector<std::uint8_t>(63, 1)), Error);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto bits = coin_flips(500 + seed * 31, seed);
        for (std::size_t i = 0; i < bits.size(); i += 3) bits[i] = 0;
        auto flipped = bits;
        for (auto& b : flipped) b ^= 1U;
        CHECK(complexity_score(bits) == complexity_score(flipped));
        const double s = complexity_score(bits);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}
