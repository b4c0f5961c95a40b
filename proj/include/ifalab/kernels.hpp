#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on x86,
// an AVX2 variant; `active_level()` picks one at runtime. Set IFA_LAB_SIMD=scalar
// to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ifalab::kernels {

enum class SimdLevel { scalar, avx2 };

std::string_view to_string(SimdLevel level) noexcept;

bool avx2_supported() noexcept;
SimdLevel active_level() noexcept;

struct PowerSums {
    double s2 = 0;  // sum (x - mean)^2
    double s3 = 0;
    double s4 = 0;
};

double sum(std::span<const double> x) noexcept;
PowerSums central_power_sums(std::span<const double> x, double mean) noexcept;

/// sum over t < size-lag of (x[t] - mean) * (x[t+lag] - mean). Requires lag < size.
double lagged_cross(std::span<const double> x, double mean, std::size_t lag) noexcept;

/// Elementary CA update. `padded` holds the row with one zero cell on each
/// side (size == out.size() + 2); cells are 0 or 1.
void eca_row(std::span<const std::uint8_t> padded, std::span<std::uint8_t> out, std::uint8_t rule) noexcept;

namespace scalar {
double sum(std::span<const double> x) noexcept;
PowerSums central_power_sums(std::span<const double> x, double mean) noexcept;
double lagged_cross(std::span<const double> x, double mean, std::size_t lag) noexcept;
void eca_row(std::span<const std::uint8_t> padded, std::span<std::uint8_t> out, std::uint8_t rule) noexcept;
}  // namespace scalar

#if defined(IFALAB_HAVE_AVX2)
namespace avx2 {
double sum(std::span<const double> x) noexcept;
PowerSums central_power_sums(std::span<const double> x, double mean) noexcept;
double lagged_cross(std::span<const double> x, double mean, std::size_t lag) noexcept;
void eca_row(std::span<const std::uint8_t> padded, std::span<std::uint8_t> out, std::uint8_t rule) noexcept;
}  // namespace avx2
#endif

}  // namespace ifalab::kernels
