#include "ifalab/kernels.hpp"

namespace ifalab::kernels::scalar {

double sum(std::span<const double> x) noexcept {
    double total = 0;
    for (double v : x) total += v;
    return total;
}

PowerSums central_power_sums(std::span<const double> x, double mean) noexcept {
    PowerSums out;
    for (double v : x) {
        const double d = v - mean;
        const double d2 = d * d;
        out.s2 += d2;
        out.s3 += d2 * d;
        out.s4 += d2 * d2;
    }
    return out;
}

double lagged_cross(std::span<const double> x, double mean, std::size_t lag) noexcept {
    double total = 0;
    for (std::size_t t = 0; t + lag < x.size(); ++t) total += (x[t] - mean) * (x[t + lag] - mean);
    return total;
}

void eca_row(std::span<const std::uint8_t> padded, std::span<std::uint8_t> out, std::uint8_t rule) noexcept {
    for (std::size_t i = 0; i < out.size(); ++i) {
        const unsigned idx = (unsigned{padded[i]} << 2) | (unsigned{padded[i + 1]} << 1) | padded[i + 2];
        out[i] = static_cast<std::uint8_t>((rule >> idx) & 1U);
    }
}

}  // namespace ifalab::kernels::scalar
