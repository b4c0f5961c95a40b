#pragma once

// Self-contained SVG figures. Plots are derived views; nothing here feeds back
// into CSV output.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifalab/ca.hpp"

namespace ifalab::svg {

struct Series {
    std::string name;
    std::vector<double> y;
    std::string colour;
};

/// Points at (index, value) for each series, drawn in order.
std::string scatter(std::string_view title, std::span<const Series> series);

/// Polylines over a shared index axis, one panel per series group.
std::string lines(std::string_view title, std::span<const Series> series);

/// Stacked line panels sharing an x axis, e.g. rolling mean/std/skew/kurtosis.
std::string panels(std::string_view title, std::span<const Series> series);

/// One black rectangle per polluting cell.
std::string raster(std::string_view title, const CaGrid& grid);

}  // namespace ifalab::svg
