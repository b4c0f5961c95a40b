#include <cstdlib>
#include <string>

#include "ifalab/kernels.hpp"

namespace ifalab::kernels {

std::string_view to_string(SimdLevel level) noexcept {
    return level == SimdLevel::avx2 ? "avx2" : "scalar";
}

bool avx2_supported() noexcept {
#if defined(IFALAB_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

SimdLevel detect_level() noexcept {
    if (const char* forced = std::getenv("IFA_LAB_SIMD"); forced && std::string(forced) == "scalar") {
        return SimdLevel::scalar;
    }
    return avx2_supported() ? SimdLevel::avx2 : SimdLevel::scalar;
}

struct KernelTable {
    double (*sum)(std::span<const double>) noexcept;
    PowerSums (*central_power_sums)(std::span<const double>, double) noexcept;
    double (*lagged_cross)(std::span<const double>, double, std::size_t) noexcept;
    void (*eca_row)(std::span<const std::uint8_t>, std::span<std::uint8_t>, std::uint8_t) noexcept;
};

const KernelTable& table() noexcept {
    static const KernelTable selected = [] {
#if defined(IFALAB_HAVE_AVX2)
        if (active_level() == SimdLevel::avx2) {
            return KernelTable{avx2::sum, avx2::central_power_sums, avx2::lagged_cross, avx2::eca_row};
        }
#endif
        return KernelTable{scalar::sum, scalar::central_power_sums, scalar::lagged_cross, scalar::eca_row};
    }();
    return selected;
}

}  // namespace

SimdLevel active_level() noexcept {
    static const SimdLevel level = detect_level();
    return level;
}

double sum(std::span<const double> x) noexcept { return table().sum(x); }

PowerSums central_power_sums(std::span<const double> x, double mean) noexcept {
    return table().central_power_sums(x, mean);
}

double lagged_cross(std::span<const double> x, double mean, std::size_t lag) noexcept {
    return table().lagged_cross(x, mean, lag);
}

void eca_row(std::span<const std::uint8_t> padded, std::span<std::uint8_t> out, std::uint8_t rule) noexcept {
    table().eca_row(padded, out, rule);
}

}  // namespace ifalab::kernels
