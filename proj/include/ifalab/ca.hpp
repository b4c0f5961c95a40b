#pragma once

// Elementary cellular automaton pollution model: each cell decides to pollute
// (1) or abstain (0) from its own and its neighbours' previous choices.
// Boundary cells beyond the row are fixed at 0.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ifalab {

enum class CaRegime { anarchy, full_regulation, ex_post_justice };

std::string_view to_string(CaRegime regime) noexcept;
CaRegime parse_ca_regime(std::string_view text);

struct CaConfig {
    std::size_t width = 201;
    std::size_t steps = 400;
    int eca_rule = 110;
    CaRegime regime = CaRegime::anarchy;
    double justice_p = 0.1;
    std::uint64_t seed = 1;
    std::vector<std::uint8_t> initial;  // empty = single polluter at the centre

    void validate() const;
    std::vector<std::uint8_t> initial_row() const;
};

/// steps x width cells, row-major.
struct CaGrid {
    std::size_t width = 0;
    std::size_t steps = 0;
    std::vector<std::uint8_t> cells;

    std::span<const std::uint8_t> row(std::size_t r) const { return {cells.data() + r * width, width}; }
    std::span<std::uint8_t> row(std::size_t r) { return {cells.data() + r * width, width}; }
};

std::vector<std::uint8_t> eca_step(std::span<const std::uint8_t> row, int rule);

/// Each previous polluter, with probability p, makes one uniformly chosen
/// previous abstainer pollute in `next_row`. Only ever adds pollution.
std::vector<std::uint8_t> apply_justice(std::span<const std::uint8_t> prev_row, std::span<const std::uint8_t> next_row,
                                        double p, std::mt19937_64& rng);

CaGrid run_ca(const CaConfig& config);

struct RegimeOutcome {
    CaRegime regime;
    double score;  // NaN when the grid has fewer than 64 cells
    double pollution_rate;
    bool right_half_polluted;
    std::vector<double> cell_frequency;  // per column, fraction of rows polluting
};

struct RegimeReport {
    CaConfig config;
    std::vector<RegimeOutcome> outcomes;  // anarchy, full regulation, ex post justice
};

/// Column of the rightmost polluter in the initial row; cells right of it are
/// the half that rule 110 never reaches on its own.
std::size_t seed_column(const CaConfig& config);

RegimeOutcome summarize(const CaGrid& grid, CaRegime regime, std::size_t seed_col);
RegimeReport compare_regimes(const CaConfig& config);

/// Plain PBM: "P1", dimensions, then one line of 0/1 per row.
std::string to_pbm(const CaGrid& grid);

}  // namespace ifalab
