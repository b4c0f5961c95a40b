#include <doctest.h>

#include <cmath>
#include <random>

#include "ifalab/kernels.hpp"

using namespace ifalab;

namespace {

std::vector<double> random_doubles(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> draw(0.3, 2.0);
    std::vector<double> x(n);
    for (auto& v : x) v = draw(gen);
    return x;
}

// Reassociation error bound: a few ulps of the absolute-value sum.
bool sums_agree(double a, double b, double magnitude) { return std::abs(a - b) <= 1e-13 * (magnitude + 1.0); }

}  // namespace

TEST_CASE("scalar eca kernel follows the rule table") {
    const std::vector<std::uint8_t> padded{0, 0, 0, 0, 1, 0, 0, 0, 0};
    std::vector<std::uint8_t> out(7);
    kernels::scalar::eca_row(padded, out, 110);
    CHECK(out == std::vector<std::uint8_t>{0, 0, 1, 1, 0, 0, 0});
}

#if defined(IFALAB_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!kernels::avx2_supported()) {
        MESSAGE("AVX2 not available on this CPU; skipping");
        return;
    }
    for (std::size_t n : {0UL, 1UL, 3UL, 4UL, 7UL, 8UL, 9UL, 31UL, 64UL, 1000UL, 4099UL}) {
        const auto x = random_doubles(n, n + 1);
        double magnitude = 0;
        for (double v : x) magnitude += std::abs(v);
        CHECK(sums_agree(kernels::avx2::sum(x), kernels::scalar::sum(x), magnitude));

        const double mean = n ? kernels::scalar::sum(x) / static_cast<double>(n) : 0.0;
        const auto a = kernels::avx2::central_power_sums(x, mean);
        const auto s = kernels::scalar::central_power_sums(x, mean);
        double m3 = 0, m4 = 0;
        for (double v : x) {
            m3 += std::pow(std::abs(v - mean), 3);
            m4 += std::pow(v - mean, 4);
        }
        CHECK(sums_agree(a.s2, s.s2, s.s2));
        CHECK(sums_agree(a.s3, s.s3, m3));
        CHECK(sums_agree(a.s4, s.s4, m4));

        for (std::size_t lag : {1UL, 2UL, 5UL, 22UL}) {
            if (lag >= n) continue;
            CHECK(sums_agree(kernels::avx2::lagged_cross(x, mean, lag), kernels::scalar::lagged_cross(x, mean, lag),
                             s.s2));
        }
    }
}

TEST_CASE("avx2 eca kernel is bit-identical to scalar for every rule") {
    if (!kernels::avx2_supported()) return;
    std::mt19937_64 gen(99);
    for (std::size_t width : {3UL, 31UL, 32UL, 33UL, 64UL, 201UL, 1000UL}) {
        std::vector<std::uint8_t> padded(width + 2, 0);
        for (std::size_t i = 1; i <= width; ++i) padded[i] = static_cast<std::uint8_t>(gen() & 1U);
        for (int rule = 0; rule < 256; ++rule) {
            std::vector<std::uint8_t> a(width), s(width);
            kernels::avx2::eca_row(padded, a, static_cast<std::uint8_t>(rule));
            kernels::scalar::eca_row(padded, s, static_cast<std::uint8_t>(rule));
            REQUIRE(a == s);
        }
    }
}
#endif

TEST_CASE("dispatch reports a level and routes to a working kernel") {
    const auto level = kernels::active_level();
    CHECK((kernels::to_string(level) == "scalar" || kernels::to_string(level) == "avx2"));
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(kernels::sum(x) == 10.0);
    CHECK(kernels::central_power_sums(x, 2.5).s2 == 5.0);
    CHECK(kernels::lagged_cross(x, 2.5, 1) == doctest::Approx(-1.5 * -0.5 + -0.5 * 0.5 + 0.5 * 1.5));
}
