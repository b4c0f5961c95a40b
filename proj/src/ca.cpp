#include <limits>
#include "ifalab/ca.hpp"

#include <algorithm>

#include "ifalab/error.hpp"
#include "ifalab/kernels.hpp"
#include "ifalab/stats.hpp"

namespace ifalab {

std::string_view to_string(CaRegime regime) noexcept {
    switch (regime) {
        case CaRegime::anarchy: return "anarchy";
        case CaRegime::full_regulation: return "full_regulation";
        case CaRegime::ex_post_justice: return "ex_post_justice";
    }
    return "unknown";
}

CaRegime parse_ca_regime(std::string_view text) {
    if (text == "anarchy") return CaRegime::anarchy;
    if (text == "full_regulation" || text == "full") return CaRegime::full_regulation;
    if (text == "ex_post_justice" || text == "justice") return CaRegime::ex_post_justice;
    throw Error(ErrorCode::parse, "unknown CA regime '" + std::string(text) + "'");
}

void CaConfig::validate() const {
    require(width >= 3, "CA width must be at least 3");
    require(steps >= 1, "CA needs at least one row");
    if (eca_rule < 0 || eca_rule > 255) {
        throw Error(ErrorCode::range, "elementary CA rule must be in 0..255");
    }
    require(justice_p >= 0 && justice_p <= 1, "justice probability must lie in [0,1]");
    require(initial.empty() || initial.size() == width, "initial row must match the width");
    for (auto c : initial) require(c <= 1, "cells must be 0 or 1");
}

std::vector<std::uint8_t> CaConfig::initial_row() const {
    if (!initial.empty()) return initial;
    std::vector<std::uint8_t> row(width, 0);
    row[width / 2] = 1;
    return row;
}

std::vector<std::uint8_t> eca_step(std::span<const std::uint8_t> row, int rule) {
    if (rule < 0 || rule > 255) throw Error(ErrorCode::range, "elementary CA rule must be in 0..255");
    require(row.size() >= 3, "CA width must be at least 3");
    std::vector<std::uint8_t> padded(row.size() + 2, 0);
    std::copy(row.begin(), row.end(), padded.begin() + 1);
    std::vector<std::uint8_t> out(row.size());
    kernels::eca_row(padded, out, static_cast<std::uint8_t>(rule));
    return out;
}

std::vector<std::uint8_t> apply_justice(std::span<const std::uint8_t> prev_row, std::span<const std::uint8_t> next_row,
                                        double p, std::mt19937_64& rng) {
    require(!prev_row.empty(), "justice needs a non-empty row");
    require(prev_row.size() == next_row.size(), "rows must have the same width");
    std::vector<std::uint8_t> out(next_row.begin(), next_row.end());
    std::vector<std::size_t> abstainers;
    for (std::size_t i = 0; i < prev_row.size(); ++i) {
        if (prev_row[i] == 0) abstainers.push_back(i);
    }
    if (abstainers.empty() || p <= 0) return out;

    std::bernoulli_distribution retaliates(p);
    std::uniform_int_distribution<std::size_t> pick(0, abstainers.size() - 1);
    for (auto cell : prev_row) {
        if (cell != 0 && retaliates(rng)) out[abstainers[pick(rng)]] = 1;
    }
    return out;
}

CaGrid run_ca(const CaConfig& config) {
    config.validate();
    CaGrid grid{config.width, config.steps, std::vector<std::uint8_t>(config.width * config.steps, 0)};
    const auto first = config.initial_row();
    std::copy(first.begin(), first.end(), grid.row(0).begin());
    if (config.regime == CaRegime::full_regulation) return grid;

    std::mt19937_64 rng(config.seed);
    std::vector<std::uint8_t> padded(config.width + 2, 0);
    for (std::size_t r = 1; r < config.steps; ++r) {
        const auto prev = grid.row(r - 1);
        auto next = grid.row(r);
        std::copy(prev.begin(), prev.end(), padded.begin() + 1);
        kernels::eca_row(padded, next, static_cast<std::uint8_t>(config.eca_rule));
        if (config.regime == CaRegime::ex_post_justice && config.justice_p > 0) {
            const auto judged = apply_justice(prev, next, config.justice_p, rng);
            std::copy(judged.begin(), judged.end(), next.begin());
        }
    }
    return grid;
}

std::size_t seed_column(const CaConfig& config) {
    const auto row = config.initial_row();
    std::size_t col = config.width / 2;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i]) col = i;
    }
    return col;
}

RegimeOutcome summarize(const CaGrid& grid, CaRegime regime, std::size_t seed_col) {
    // Grids too small for a meaningful score report NaN instead of failing the run.
    const double score = grid.cells.size() >= 64 ? complexity_score(grid.cells) : std::numeric_limits<double>::quiet_NaN();
    RegimeOutcome out{regime, score, 0.0, false, std::vector<double>(grid.width, 0.0)};
    std::size_t ones = 0;
    for (std::size_t r = 0; r < grid.steps; ++r) {
        const auto row = grid.row(r);
        for (std::size_t c = 0; c < grid.width; ++c) {
            if (!row[c]) continue;
            ++ones;
            out.cell_frequency[c] += 1.0;
            if (c > seed_col) out.right_half_polluted = true;
        }
    }
    for (auto& f : out.cell_frequency) f /= static_cast<double>(grid.steps);
    out.pollution_rate = static_cast<double>(ones) / static_cast<double>(grid.cells.size());
    return out;
}

RegimeReport compare_regimes(const CaConfig& config) {
    config.validate();
    RegimeReport report{config, {}};
    const auto seed_col = seed_column(config);
    for (auto regime : {CaRegime::anarchy, CaRegime::full_regulation, CaRegime::ex_post_justice}) {
        CaConfig run = config;
        run.regime = regime;
        report.outcomes.push_back(summarize(run_ca(run), regime, seed_col));
    }
    return report;
}

std::string to_pbm(const CaGrid& grid) {
    std::string out = "P1\n" + std::to_string(grid.width) + " " + std::to_string(grid.steps) + "\n";
    out.reserve(out.size() + grid.cells.size() + grid.steps);
    for (std::size_t r = 0; r < grid.steps; ++r) {
        for (auto c : grid.row(r)) out += c ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace ifalab
