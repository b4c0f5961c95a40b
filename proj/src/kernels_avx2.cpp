// Compiled with -mavx2; only called after a runtime CPU check.
#include <immintrin.h>

#include "ifalab/kernels.hpp"

namespace ifalab::kernels::avx2 {

namespace {

double horizontal_add(__m256d v) noexcept {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double sum(std::span<const double> x) noexcept {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= x.size(); i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x.data() + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x.data() + i + 4));
    }
    double total = horizontal_add(_mm256_add_pd(acc0, acc1));
    for (; i < x.size(); ++i) total += x[i];
    return total;
}

PowerSums central_power_sums(std::span<const double> x, double mean) noexcept {
    const __m256d m = _mm256_set1_pd(mean);
    __m256d s2 = _mm256_setzero_pd();
    __m256d s3 = _mm256_setzero_pd();
    __m256d s4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), m);
        const __m256d d2 = _mm256_mul_pd(d, d);
        s2 = _mm256_add_pd(s2, d2);
        s3 = _mm256_add_pd(s3, _mm256_mul_pd(d2, d));
        s4 = _mm256_add_pd(s4, _mm256_mul_pd(d2, d2));
    }
    PowerSums out{horizontal_add(s2), horizontal_add(s3), horizontal_add(s4)};
    for (; i < x.size(); ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.s2 += d2;
        out.s3 += d2 * d;
        out.s4 += d2 * d2;
    }
    return out;
}

double lagged_cross(std::span<const double> x, double mean, std::size_t lag) noexcept {
    const std::size_t count = x.size() - lag;
    const __m256d m = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t t = 0;
    for (; t + 4 <= count; t += 4) {
        const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(x.data() + t), m);
        const __m256d b = _mm256_sub_pd(_mm256_loadu_pd(x.data() + t + lag), m);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, b));
    }
    double total = horizontal_add(acc);
    for (; t < count; ++t) total += (x[t] - mean) * (x[t + lag] - mean);
    return total;
}

void eca_row(std::span<const std::uint8_t> padded, std::span<std::uint8_t> out, std::uint8_t rule) noexcept {
    alignas(16) std::uint8_t table[16] = {};
    for (unsigned j = 0; j < 8; ++j) table[j] = static_cast<std::uint8_t>((rule >> j) & 1U);
    const __m256i lut = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(table)));

    const std::uint8_t* src = padded.data();
    std::size_t i = 0;
    for (; i + 32 <= out.size(); i += 32) {
        const __m256i left = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i centre = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 1));
        const __m256i right = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 2));
        // Cells are 0/1, so 16-bit shifts never carry across bytes.
        const __m256i idx = _mm256_or_si256(_mm256_or_si256(_mm256_slli_epi16(left, 2), _mm256_slli_epi16(centre, 1)), right);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), _mm256_shuffle_epi8(lut, idx));
    }
    for (; i < out.size(); ++i) {
        const unsigned idx = (unsigned{src[i]} << 2) | (unsigned{src[i + 1]} << 1) | src[i + 2];
        out[i] = static_cast<std::uint8_t>((rule >> idx) & 1U);
    }
}

}  // namespace ifalab::kernels::avx2
